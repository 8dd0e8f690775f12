#pragma once

// Necessary conditions for positive semi-definiteness of a Hankel quartic,
// the binary-quartic threshold eta, and effective-domain membership.

#include <optional>
#include <string>
#include <vector>

#include "hankel/core.hpp"

namespace hankel {

/// Threshold of the symmetric binary quartic
///   g(y1, y2) = a y1^4 + 4 b y1^3 y2 + 6 c y1^2 y2^2 + 4 b y1 y2^3 + a y2^4,
/// which is PSD iff a >= eta(b, c):
///   eta = 4|b| - 3c                       if c <= |b|,
///   eta = (3c - sqrt(9c^2 - 8b^2)) / 2    otherwise.
double eta(double beta, double gamma);

/// eta(v5, v6) < 1 (strict).
bool in_effective_domain(double v5, double v6);
inline bool in_effective_domain(const SlicePoint& p) { return in_effective_domain(p.v5, p.v6); }
/// in_effective_domain, or eta(v5, v6) == 1 when `admit_boundary`.
bool in_effective_domain(const SlicePoint& p, bool admit_boundary);

/// alpha >= eta(beta, gamma).
bool binary_quartic_psd(double alpha, double beta, double gamma);

/// g evaluated at (y1, y2); used by oracles and witnesses.
double binary_quartic(double alpha, double beta, double gamma, double y1, double y2);

enum class InequalityFamily {
  Nonnegativity,  // v_i >= 0
  Adjacent,       // v_i + 6 v_{i+2} + v_{i+4} >= 4 |v_{i+1} + v_{i+3}|
  Skip,           // v_i + 6 v_{i+4} + v_{i+8} >= 4 |v_{i+2} + v_{i+6}|
  Corner,         // v_0 + 6 v_6 + v_12 >= 4 |v_3 + v_9|
  EtaBound,       // eta(v5, v6) <= 1, symmetric vectors with v4 = 1 only
};

struct InequalityRecord {
  std::string id;  // "(5)i0" ... "(8)", "cor1"
  InequalityFamily family = InequalityFamily::Nonnegativity;
  int index = 0;  // i in the families above; 0 for Corner and EtaBound
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

struct ConditionReport {
  std::vector<InequalityRecord> records;
  bool overall = true;
};

/// Evaluates every necessary inequality without short-circuiting.
ConditionReport check_necessary(const GeneratingVector& v);

/// A point x with f(x) equal to lhs - rhs of the record (for the EtaBound
/// record: a point on the x2-x3 plane where f < 0 whenever eta > 1).
/// Returns nullopt only for EtaBound records that are satisfied.
std::optional<Vec4> necessary_witness(const GeneratingVector& v, const InequalityRecord& record);

enum class DegenerateTag { NonDegenerate, TriviallySOS, NotPSD };

struct DegenerateClass {
  DegenerateTag tag = DegenerateTag::NonDegenerate;
  std::optional<int> violating_index;
};

/// Zero tolerance applied to v0*v12, v4*v8 and the forced-zero entries.
inline constexpr double kDegeneracyTolerance = 1e-12;

/// If v0*v12 = 0 or v4*v8 = 0, PSD forces v1 = ... = v11 = 0 and leaves
/// f = v0 x1^4 + v12 x4^4. NotPSD carries the first offending index.
DegenerateClass classify_degenerate(const GeneratingVector& v);

std::string to_string(DegenerateTag tag);

}  // namespace hankel
