#pragma once

// Shared random generators for the test suites. Every generator takes an
// explicit engine so each test is reproducible on its own.

#include <array>
#include <cmath>
#include <random>
#include <utility>

#include "hankel/conditions.hpp"
#include "hankel/core.hpp"
#include "hankel/sos_bound.hpp"

namespace hankel::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline double normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

inline Vec4 random_vec4(Rng& rng, double scale = 1.0) {
  return {{scale * normal(rng), scale * normal(rng), scale * normal(rng), scale * normal(rng)}};
}

inline GeneratingVector random_vector(Rng& rng, double scale = 2.0) {
  std::array<double, 13> v{};
  for (double& x : v) x = uniform(rng, -scale, scale);
  return GeneratingVector(v);
}

/// Slice point with eta(v5, v6) < 1 by a safe margin.
inline SlicePoint random_domain_point(Rng& rng) {
  for (;;) {
    SlicePoint p{uniform(rng, -3.0, 3.0), uniform(rng, -0.1, 3.0), uniform(rng, -0.5, 0.5), uniform(rng, -0.5, 0.5),
                 uniform(rng, -0.5, 0.5)};
    if (eta(p.v5, p.v6) < 0.9) return p;
  }
}

/// Random PSD Gram matrix of the given rank: sum of outer products.
inline GramMatrix random_psd_gram(Rng& rng, int rank) {
  GramMatrix g;
  for (int k = 0; k < rank; ++k) {
    std::array<double, kNumQuadraticMonomials> u{};
    for (double& x : u) x = normal(rng);
    g += GramMatrix::outer(u);
  }
  return g;
}

/// A point x with small q(x) / (x1^4 + x2^4 + x3^4 + x4^4), sampled on the
/// sphere; the returned ratio is an upper bound on the true minimum.
inline std::pair<double, Vec4> sampled_ratio_min(const QuarticForm& q, Rng& rng, int samples = 20000) {
  double best = INFINITY;
  Vec4 arg{};
  for (int k = 0; k < samples; ++k) {
    const Vec4 x = random_vec4(rng);
    double s = 0.0;
    for (double c : x.x) s += c * c * c * c;
    const double r = q.evaluate(x) / s;
    if (r < best) {
      best = r;
      arg = x;
    }
  }
  return {best, arg};
}

/// q - t (x1^4 + x2^4 + x3^4 + x4^4)
inline QuarticForm shifted(QuarticForm q, double t) {
  for (std::size_t k = 0; k < 4; ++k) {
    MultiIndex a{0, 0, 0, 0};
    a[k] = 4;
    q[quartic_position(a)] -= t;
  }
  return q;
}

inline SlicePoint negated_odd(const SlicePoint& p) { return {p.v2, p.v6, -p.v1, -p.v3, -p.v5}; }

}  // namespace hankel::testing
