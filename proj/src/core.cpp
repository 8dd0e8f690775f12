#include "hankel/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hankel {
namespace {

std::array<MultiIndex, kNumQuarticMonomials> make_quartic_indices() {
  std::array<MultiIndex, kNumQuarticMonomials> out{};
  std::size_t k = 0;
  for (int a1 = 4; a1 >= 0; --a1) {
    for (int a2 = 4 - a1; a2 >= 0; --a2) {
      for (int a3 = 4 - a1 - a2; a3 >= 0; --a3) {
        out[k++] = {a1, a2, a3, 4 - a1 - a2 - a3};
      }
    }
  }
  return out;
}

std::array<MultiIndex, kNumQuadraticMonomials> make_quadratic_basis() {
  std::array<MultiIndex, kNumQuadraticMonomials> out{};
  std::size_t k = 0;
  for (int a1 = 2; a1 >= 0; --a1) {
    for (int a2 = 2 - a1; a2 >= 0; --a2) {
      for (int a3 = 2 - a1 - a2; a3 >= 0; --a3) {
        out[k++] = {a1, a2, a3, 2 - a1 - a2 - a3};
      }
    }
  }
  return out;
}

// Lookup over (a1, a2, a3); a4 is implied.
std::array<std::size_t, 125> make_position_table() {
  std::array<std::size_t, 125> table{};
  table.fill(kNumQuarticMonomials);
  const auto& idx = quartic_indices();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    table[static_cast<std::size_t>(idx[k][0] * 25 + idx[k][1] * 5 + idx[k][2])] = k;
  }
  return table;
}

std::array<std::size_t, 100> make_product_table() {
  std::array<std::size_t, 100> table{};
  const auto& b = quadratic_basis();
  for (std::size_t i = 0; i < kNumQuadraticMonomials; ++i) {
    for (std::size_t j = 0; j < kNumQuadraticMonomials; ++j) {
      table[i * 10 + j] = quartic_position({b[i][0] + b[j][0], b[i][1] + b[j][1],
                                            b[i][2] + b[j][2], b[i][3] + b[j][3]});
    }
  }
  return table;
}

constexpr std::array<double, 5> kFactorial = {1.0, 1.0, 2.0, 6.0, 24.0};

}  // namespace

GeneratingVector::GeneratingVector(const std::array<double, kSize>& values) : v_(values) {
  for (double x : v_) {
    if (!std::isfinite(x)) throw std::invalid_argument("generating vector entries must be finite");
  }
}

GeneratingVector GeneratingVector::from_span(std::span<const double> values) {
  if (values.size() != kSize) {
    throw std::invalid_argument("generating vector needs exactly 13 entries, got " +
                                std::to_string(values.size()));
  }
  std::array<double, kSize> a{};
  std::copy(values.begin(), values.end(), a.begin());
  return GeneratingVector(a);
}

bool GeneratingVector::is_symmetric() const {
  for (std::size_t j = 0; j < kSize; ++j) {
    if (v_[j] != v_[kSize - 1 - j]) return false;
  }
  return true;
}

bool SlicePoint::is_finite() const {
  for (double x : as_array()) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

double SlicePoint::max_abs() const {
  double m = 0.0;
  for (double x : as_array()) m = std::max(m, std::abs(x));
  return m;
}

double Vec4::norm() const { return std::sqrt(dot(*this)); }

bool Vec4::is_finite() const {
  return std::all_of(x.begin(), x.end(), [](double t) { return std::isfinite(t); });
}

const std::array<MultiIndex, kNumQuarticMonomials>& quartic_indices() {
  static const auto idx = make_quartic_indices();
  return idx;
}

std::size_t quartic_position(const MultiIndex& a) {
  if (a[0] < 0 || a[1] < 0 || a[2] < 0 || a[3] < 0 || a[0] + a[1] + a[2] + a[3] != 4) {
    throw std::invalid_argument("not a degree-4 multi-index: " + monomial_key(a));
  }
  static const auto table = make_position_table();
  return table[static_cast<std::size_t>(a[0] * 25 + a[1] * 5 + a[2])];
}

const std::array<MultiIndex, kNumQuadraticMonomials>& quadratic_basis() {
  static const auto basis = make_quadratic_basis();
  return basis;
}

std::size_t product_position(std::size_t i, std::size_t j) {
  static const auto table = make_product_table();
  return table[i * 10 + j];
}

double monomial_value(const MultiIndex& a, const Vec4& x) {
  double r = 1.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (int e = 0; e < a[i]; ++e) r *= x[i];
  }
  return r;
}

QuarticForm::QuarticForm(const std::array<double, kNumQuarticMonomials>& c) : c_(c) {}

double QuarticForm::evaluate(const Vec4& x) const {
  const auto& idx = quartic_indices();
  double s = 0.0;
  for (std::size_t k = 0; k < kNumQuarticMonomials; ++k) s += c_[k] * monomial_value(idx[k], x);
  return s;
}

double QuarticForm::max_abs() const {
  double m = 0.0;
  for (double c : c_) m = std::max(m, std::abs(c));
  return m;
}

bool QuarticForm::is_finite() const {
  return std::all_of(c_.begin(), c_.end(), [](double t) { return std::isfinite(t); });
}

QuarticForm& QuarticForm::operator+=(const QuarticForm& o) {
  for (std::size_t k = 0; k < kNumQuarticMonomials; ++k) c_[k] += o.c_[k];
  return *this;
}

QuarticForm& QuarticForm::operator-=(const QuarticForm& o) {
  for (std::size_t k = 0; k < kNumQuarticMonomials; ++k) c_[k] -= o.c_[k];
  return *this;
}

GeneratingVector assemble(const SlicePoint& p, double v0) {
  return GeneratingVector({v0, p.v1, p.v2, p.v3, 1.0, p.v5, p.v6, p.v5, 1.0, p.v3, p.v2, p.v1, v0});
}

double evaluate(const GeneratingVector& v, const Vec4& x) {
  const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
  const double x1s = x1 * x1, x2s = x2 * x2, x3s = x3 * x3, x4s = x4 * x4;
  double f = v[0] * x1s * x1s;
  f += 4.0 * v[1] * x1s * x1 * x2;
  f += v[2] * (4.0 * x1s * x1 * x3 + 6.0 * x1s * x2s);
  f += v[3] * (4.0 * x1 * x2s * x2 + 4.0 * x1s * x1 * x4 + 12.0 * x1s * x2 * x3);
  f += v[4] * (x2s * x2s + 6.0 * x1s * x3s + 12.0 * x1 * x2s * x3 + 12.0 * x1s * x2 * x4);
  f += v[5] * (4.0 * x2s * x2 * x3 + 12.0 * x1 * x2 * x3s + 12.0 * x1 * x2s * x4 +
               12.0 * x1s * x3 * x4);
  f += v[6] * (4.0 * x1 * x3s * x3 + 4.0 * x2s * x2 * x4 + 6.0 * x1s * x4s + 6.0 * x2s * x3s +
               24.0 * x1 * x2 * x3 * x4);
  f += v[7] * (4.0 * x2 * x3s * x3 + 12.0 * x2s * x3 * x4 + 12.0 * x1 * x3s * x4 +
               12.0 * x1 * x2 * x4s);
  f += v[8] * (x3s * x3s + 6.0 * x2s * x4s + 12.0 * x2 * x3s * x4 + 12.0 * x1 * x3 * x4s);
  f += v[9] * (4.0 * x3s * x3 * x4 + 4.0 * x1 * x4s * x4 + 12.0 * x2 * x3 * x4s);
  f += v[10] * (4.0 * x2 * x4s * x4 + 6.0 * x3s * x4s);
  f += 4.0 * v[11] * x3 * x4s * x4;
  f += v[12] * x4s * x4s;
  return f;
}

double evaluate_oracle(const GeneratingVector& v, const Vec4& x) {
  double s = 0.0;
  for (std::size_t i1 = 0; i1 < 4; ++i1) {
    for (std::size_t i2 = 0; i2 < 4; ++i2) {
      for (std::size_t i3 = 0; i3 < 4; ++i3) {
        for (std::size_t i4 = 0; i4 < 4; ++i4) {
          s += v[i1 + i2 + i3 + i4] * x[i1] * x[i2] * x[i3] * x[i4];
        }
      }
    }
  }
  return s;
}

Vec4 gradient(const GeneratingVector& v, const Vec4& x) {
  // d f / d x_i = 4 * sum_{j,k,l} v[i+j+k+l] x_j x_k x_l. The inner triple sum
  // only depends on s = j + k + l, i.e. the threefold self-convolution of x.
  std::array<double, 7> sq{};
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t k = 0; k < 4; ++k) sq[j + k] += x[j] * x[k];
  }
  std::array<double, 10> cube{};
  for (std::size_t s = 0; s < 7; ++s) {
    for (std::size_t l = 0; l < 4; ++l) cube[s + l] += sq[s] * x[l];
  }
  Vec4 g;
  for (std::size_t i = 0; i < 4; ++i) {
    double acc = 0.0;
    for (std::size_t s = 0; s < 10; ++s) acc += v[i + s] * cube[s];
    g[i] = 4.0 * acc;
  }
  return g;
}

QuarticForm to_quartic(const GeneratingVector& v) {
  QuarticForm q;
  const auto& idx = quartic_indices();
  for (std::size_t k = 0; k < kNumQuarticMonomials; ++k) {
    const auto& a = idx[k];
    const double multinomial =
        kFactorial[4] / (kFactorial[a[0]] * kFactorial[a[1]] * kFactorial[a[2]] * kFactorial[a[3]]);
    q[k] = multinomial * v[static_cast<std::size_t>(a[1] + 2 * a[2] + 3 * a[3])];
  }
  return q;
}

std::string monomial_key(const MultiIndex& a) {
  std::string key;
  for (int e : a) key += std::to_string(e);
  return key;
}

}  // namespace hankel
