#pragma once

// N0(P): the smallest v0 for which the symmetric Hankel quartic at slice
// point P is PSD. Writing f = v0 (x1^4 + x4^4) + r(x), with r the form at
// v0 = 0, N0 is the supremum of -r(x) over the surface x1^4 + x4^4 = 1.

#include <cstdint>
#include <span>

#include "hankel/core.hpp"

namespace hankel {

struct SearchOptions {
  int n_starts = 200;
  std::uint64_t seed = 0;
  double grad_tol = 1e-10;
  int max_iters_per_start = 5000;
  int grid_resolution = 60;
  /// Also accept points with eta(v5, v6) == 1 exactly (the closure of the
  /// effective domain), where the bounds can still be finite.
  bool admit_boundary = false;

  /// Throws std::invalid_argument unless n_starts >= 1 and grid_resolution >= 8.
  void validate() const;
};

struct BoundResult {
  double value = 0.0;
  Vec4 witness;
  int starts_used = 0;
  bool converged = false;
};

/// Number of best grid points promoted to local-search starts.
inline constexpr int kGridSeeds = 8;

/// Multistart quasi-Newton ascent of -r over (phi, x2, x3) with
/// (x1, x4) = (cos phi, sin phi) / (cos^4 phi + sin^4 phi)^(1/4).
/// The value is attained at the witness, hence a lower bound on the true N0.
/// Throws OutsideEffectiveDomain if eta(v5, v6) >= 1 (> 1 with
/// admit_boundary), NonConvergence if no
/// start meets the gradient tolerance.
BoundResult n0(const SlicePoint& p, const SearchOptions& opts = {});

/// Approximate global minimum of f over the Euclidean unit sphere.
/// `extra_starts` are added to the random and grid starts (any nonzero scale).
/// Throws NonConvergence if no start meets the gradient tolerance.
BoundResult minimize_on_sphere(const GeneratingVector& v, const SearchOptions& opts = {},
                               std::span<const Vec4> extra_starts = {});

/// Minimum of f over a product angular grid on S^3 with `resolution`
/// samples per hyperspherical angle, polished by one local descent.
/// Brute-force reference for tests. Throws std::invalid_argument if
/// resolution < 8.
double grid_oracle_min(const GeneratingVector& v, int resolution);

}  // namespace hankel
