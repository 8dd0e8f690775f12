#include "hankel/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <utility>
#include <numbers>
#include <stdexcept>

#include "hankel/errors.hpp"

namespace hankel {
namespace {

// Indices into quadratic_basis().
enum Mono : std::size_t { X11 = 0, X12, X13, X14, X22, X23, X24, X33, X34, X44 };

// (s . x)^2 over the quadratic basis.
QuadraticForm square_of_linear(const std::array<double, 4>& s) {
  QuadraticForm q{};
  const auto& basis = quadratic_basis();
  for (std::size_t m = 0; m < kNumQuadraticMonomials; ++m) {
    double c = 1.0;
    for (std::size_t k = 0; k < 4; ++k) {
      if (basis[m][k] == 2) c = s[k] * s[k];
      if (basis[m][k] == 1) c *= s[k];
    }
    // Cross terms appear twice in the expansion.
    const bool cross = std::find(basis[m].begin(), basis[m].end(), 2) == basis[m].end();
    q[m] = cross ? 2.0 * c : c;
  }
  return q;
}

QuadraticForm sparse_form(std::initializer_list<std::pair<Mono, double>> terms) {
  QuadraticForm q{};
  for (auto [m, c] : terms) q[m] = c;
  return q;
}

void push_square(SosDecomposition& dec, double weight, const QuadraticForm& form) {
  if (weight != 0.0) dec.squares.push_back({weight, form});
}

void validate_shape(const CriticalCertificate& cert) {
  if (cert.decomposition.squares.empty()) throw InvalidCertificate("decomposition has no squares");
  for (const auto& sq : cert.decomposition.squares) {
    if (!std::isfinite(sq.weight)) throw InvalidCertificate("non-finite weight");
    if (sq.weight < 0.0) throw InvalidCertificate("negative weight " + std::to_string(sq.weight));
    for (double c : sq.form) {
      if (!std::isfinite(c)) throw InvalidCertificate("non-finite square coefficient");
    }
  }
  if (!cert.point.is_finite() || !std::isfinite(cert.critical_value) || !cert.minimizer.is_finite()) {
    throw InvalidCertificate("non-finite point, critical value or minimizer");
  }
}

}  // namespace

VerificationReport verify_certificate(const CriticalCertificate& cert, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("verify_certificate: tol must be positive");
  validate_shape(cert);

  const GeneratingVector v = assemble(cert.point, cert.critical_value);
  const QuarticForm target = to_quartic(v);
  const double scale = 1.0 + target.max_abs();
  VerificationReport report;

  const QuarticForm expanded = expand_squares(cert.decomposition);
  double worst = 0.0;
  for (std::size_t k = 0; k < kNumQuarticMonomials; ++k) {
    worst = std::max(worst, std::abs(expanded[k] - target[k]));
  }
  report.checks.push_back({"decomposition", worst, tol * scale, worst <= tol * scale});

  const Vec4& x = cert.minimizer;
  const double n2 = x.dot(x);
  const double f0 = std::abs(evaluate(v, x));
  report.checks.push_back({"zero", f0, tol * n2 * n2 * scale, f0 <= tol * n2 * n2 * scale});

  const double outer = x[0] * x[0] + x[3] * x[3];
  report.checks.push_back({"nondegenerate", outer, tol, outer > tol});

  report.passed = true;
  for (const auto& c : report.checks) report.passed = report.passed && c.passed;
  return report;
}

CriticalCertificate segment_certificate(double t) {
  if (!(std::abs(t) <= 1.0)) throw DomainError("segment certificate needs t in [-1, 1]");
  CriticalCertificate cert;
  cert.point = {1.0, 1.0, t, t, t};
  cert.critical_value = 1.0;
  push_square(cert.decomposition, 0.5 * (1.0 + t), square_of_linear({1.0, 1.0, 1.0, 1.0}));
  push_square(cert.decomposition, 0.5 * (1.0 - t), square_of_linear({1.0, -1.0, 1.0, -1.0}));
  cert.minimizer = {{1.0, 0.0, -1.0, 0.0}};
  return cert;
}

double cone_theta_min(double b) {
  if (!(b >= 1.0)) throw DomainError("cone parameter b must be >= 1");
  const double lo = std::cbrt(b - 1.0), hi = std::cbrt(b + 1.0);
  return lo * hi * hi + lo * lo * hi - 2.0 * b + 1.0;
}

ConeParameters cone_parameters(double b, double theta) {
  ConeParameters c;
  c.shift = theta + 3.0 * b - 1.0;
  c.v2 = c.shift * (theta * theta + (3.0 * b - 2.0) * theta - 3.0 * b + 4.0);
  const double quad = 3.0 * theta * theta + (10.0 * b - 6.0) * theta + 3.0 * b * b - 10.0 * b + 9.0;
  c.critical_value = c.shift * c.shift * quad;
  c.alpha1 = -(theta * theta + (4.0 * b - 2.0) * theta + 3.0 * b * b - 4.0 * b + 1.0);
  c.alpha2 = 2.0 * (theta * theta + (4.0 * b - 2.0) * theta + b * b - 4.0 * b + 4.0) / quad;
  return c;
}

CriticalCertificate cone_certificate(double b, double theta) {
  if (!std::isfinite(b) || !std::isfinite(theta)) throw DomainError("cone parameters must be finite");
  const double theta_min = cone_theta_min(b);
  if (theta < theta_min - 1e-12 * std::max(1.0, std::abs(theta_min))) {
    throw DomainError("cone certificate needs theta >= " + std::to_string(theta_min));
  }
  const ConeParameters c = cone_parameters(b, theta);
  const double m = c.critical_value;
  if (!(m > 0.0)) throw DomainError("cone critical value is not positive");

  // v2 - b vanishes at theta_min; absorb its rounding.
  double tail = 6.0 * (c.v2 - b);
  if (tail < 0.0 && tail > -1e-9 * std::max(1.0, c.v2)) tail = 0.0;
  const double weights[] = {1.0 / m, c.alpha2, 6.0 / b, 6.0 * (b * b - 1.0) / b, tail};
  for (double w : weights) {
    if (!(w >= 0.0)) throw DomainError("cone certificate weight is negative: " + std::to_string(w));
  }

  CriticalCertificate cert;
  cert.point = {c.v2, b, 0.0, 0.0, 0.0};
  cert.critical_value = m;
  auto& dec = cert.decomposition;
  push_square(dec, 1.0 / m, sparse_form({{X11, m}, {X13, 2.0 * c.v2}, {X33, c.alpha1}}));
  push_square(dec, 1.0 / m, sparse_form({{X44, m}, {X24, 2.0 * c.v2}, {X22, c.alpha1}}));
  push_square(dec, c.alpha2, sparse_form({{X13, c.shift}, {X33, 1.0}}));
  push_square(dec, c.alpha2, sparse_form({{X24, c.shift}, {X22, 1.0}}));
  push_square(dec, 6.0 / b, sparse_form({{X12, 1.0}, {X34, 1.0}, {X23, b}, {X14, b}}));
  push_square(dec, 6.0 * (b * b - 1.0) / b, sparse_form({{X12, 1.0}, {X34, 1.0}}));
  push_square(dec, tail, sparse_form({{X12, 1.0}}));
  push_square(dec, tail, sparse_form({{X34, 1.0}}));

  cert.minimizer = {{1.0, 0.0, -c.shift, 0.0}};
  return cert;
}

double ray_critical_value(double rho) {
  if (!(rho >= 0.0)) throw std::invalid_argument("ray_critical_value needs rho >= 0");
  const double r = rho;
  const double t1 = -std::pow(r, 6) + 272.0 * std::pow(r, 5) + 12608.0 * std::pow(r, 4) +
                    204032.0 * r * r * r + 1558528.0 * r * r + 5750784.0 * r + 8290304.0;
  const double t2 = -(r + 6.0) * (r + 6.0) * std::pow(r + 4.0, 3) * std::pow(r * r + 4.0 * r - 16.0, 3);
  const double t3 = 9.0 * (r + 8.0) * (r * r * r + 152.0 * r * r + 1728.0 * r + 5120.0);
  const double offset = 6.0 * r * r + 138.0 * r + 609.0;
  if (t2 >= 0.0) {
    const double w = 3.0 * std::cbrt(t1 + 32.0 * std::sqrt(t2));
    return w + t3 / w + offset;
  }
  // y = M - offset solves y^3 - 3 t3 y - 54 t1 = 0 with three real roots;
  // the principal complex cube root selects the largest.
  const double arg = std::clamp(27.0 * t1 / std::pow(t3, 1.5), -1.0, 1.0);
  return 2.0 * std::sqrt(t3) * std::cos(std::acos(arg) / 3.0) + offset;
}

double point_a_critical_value() {
  const double w = std::cbrt(3906351.0 + 9120.0 * std::sqrt(57.0));
  return 477.0 + 3.0 * w + 74403.0 / w;
}

}  // namespace hankel
