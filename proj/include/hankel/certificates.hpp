#pragma once

// Critical certificates. A slice point P in the effective domain has
// M0(P) = N0(P) = M when, at v0 = M, the form f0 has an SOS decomposition
// and a zero x with x1^2 + x4^2 > 0: any smaller v0 gives
// f(x) = (v0 - M)(x1^4 + x4^4) + f0(x) < 0.

#include <string>
#include <vector>

#include "hankel/core.hpp"
#include "hankel/decomposition.hpp"

namespace hankel {

struct CriticalCertificate {
  SlicePoint point;
  double critical_value = 0.0;  // M
  SosDecomposition decomposition;
  Vec4 minimizer;
};

struct CertificateCheck {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool passed = false;
};

struct VerificationReport {
  std::vector<CertificateCheck> checks;  // decomposition, zero, nondegenerate
  bool passed = false;
};

/// (a) expanded squares match to_quartic(assemble(P, M)) within
///     tol (1 + max |c|) in every coefficient;
/// (b) |f0(x)| <= tol |x|^4 (1 + max |c|);
/// (c) x1^2 + x4^2 > tol.
/// Throws InvalidCertificate on negative or non-finite weights, empty
/// decompositions or non-finite data; throws std::invalid_argument if tol <= 0.
VerificationReport verify_certificate(const CriticalCertificate& cert, double tol);

/// P = (1, 1, t, t, t), M = 1, x = (1, 0, -1, 0):
///   f0 = (1+t)/2 (x1+x2+x3+x4)^4 + (1-t)/2 (x1-x2+x3-x4)^4.
/// Throws DomainError if |t| > 1.
CriticalCertificate segment_certificate(double t);

/// Largest real root in theta of v2(theta) = b for the cone parameterization.
double cone_theta_min(double b);

struct ConeParameters {
  double v2 = 0.0;
  double critical_value = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double shift = 0.0;  // theta + 3b - 1
};

/// Closed-form quantities of the cone certificate at (b, theta); no checks.
ConeParameters cone_parameters(double b, double theta);

/// P = (v2(theta), b, 0, 0, 0) with v2 >= b >= 1; seven weighted terms, the
/// last split into (x1 x2)^2 and (x3 x4)^2. Throws DomainError unless b >= 1,
/// theta >= cone_theta_min(b) and every weight is nonnegative.
CriticalCertificate cone_certificate(double b, double theta);

/// Critical value on the ray P = (-rho, 0, 0, 0, 0), rho >= 0. Where the
/// closed form's inner square root turns imaginary (rho > 2 sqrt 5 - 2) the
/// real root of the equivalent depressed cubic is taken via the
/// trigonometric formula. Throws std::invalid_argument for rho < 0.
double ray_critical_value(double rho);

/// 477 + 3 cbrt(3906351 + 9120 sqrt 57) + 74403 / cbrt(3906351 + 9120 sqrt 57),
/// the critical value at P = (1, 0, 0, 0, 0).
double point_a_critical_value();

}  // namespace hankel
