#pragma once

// Quasi-Newton descent with Armijo backtracking on small fixed-size problems.

#include <array>
#include <cmath>
#include <cstddef>

namespace hankel::detail {

template <std::size_t N>
using Point = std::array<double, N>;

/// Relative gradient norm accepted when the line search stalls at rounding level.
inline constexpr double kStallGradTol = 1.5e-8;
/// Consecutive steps without relative progress above rounding that, together
/// with kStallGradTol, end a search at a degenerate (flat) stationary point.
inline constexpr int kStagnationSteps = 10;

struct DescentOptions {
  double grad_tol = 1e-10;  // stop when |grad| <= grad_tol * max(1, |value|)
  int max_iters = 5000;
};

template <std::size_t N>
struct DescentResult {
  Point<N> x{};
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  bool escaped = false;  // the escape predicate fired
};

template <std::size_t N>
double norm(const Point<N>& a) {
  double s = 0.0;
  for (double t : a) s += t * t;
  return std::sqrt(s);
}

template <std::size_t N>
double dot(const Point<N>& a, const Point<N>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
  return s;
}

/// Minimizes `fg(x, grad) -> value`. `retract(x)` maps an accepted trial point
/// back onto the search manifold (identity for unconstrained problems);
/// `escaped(x)` aborts the run when the iterate leaves the trusted region.
template <std::size_t N, class ValueGrad, class Retract, class Escaped>
DescentResult<N> bfgs_minimize(ValueGrad&& fg, Point<N> x, const DescentOptions& opts,
                               Retract&& retract, Escaped&& escaped) {
  using Mat = std::array<double, N * N>;
  auto identity = [] {
    Mat h{};
    for (std::size_t i = 0; i < N; ++i) h[i * N + i] = 1.0;
    return h;
  };

  DescentResult<N> res;
  retract(x);
  Point<N> g{};
  double f = fg(x, g);
  Mat h = identity();
  bool fresh = true;
  int stagnant = 0;

  for (int it = 0;; ++it) {
    res.iterations = it;
    const double gn = norm(g);
    if (!std::isfinite(f) || !std::isfinite(gn)) break;
    if (gn <= opts.grad_tol * std::max(1.0, std::abs(f))) {
      res.converged = true;
      break;
    }
    if (stagnant >= kStagnationSteps && gn <= kStallGradTol * std::max(1.0, std::abs(f))) {
      res.converged = true;
      break;
    }
    if (it >= opts.max_iters) break;

    Point<N> d{};
    for (std::size_t i = 0; i < N; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < N; ++j) s -= h[i * N + j] * g[j];
      d[i] = s;
    }
    double slope = dot(d, g);
    if (!(slope < 0.0)) {
      h = identity();
      fresh = true;
      for (std::size_t i = 0; i < N; ++i) d[i] = -g[i];
      slope = -gn * gn;
    }
    // First step along steepest descent is scaled to unit length.
    double t = fresh ? std::min(1.0, 1.0 / gn) : 1.0;

    Point<N> xn{}, gnew{};
    double fn = 0.0;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t i = 0; i < N; ++i) xn[i] = x[i] + t * d[i];
      retract(xn);
      fn = fg(xn, gnew);
      if (std::isfinite(fn) && fn <= f + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      if (fresh) {
        // No descent along -grad: f is flat to rounding. That is a stationary
        // point if the gradient is within the sqrt(eps) floor of the test.
        res.converged = gn <= kStallGradTol * std::max(1.0, std::abs(f));
        break;
      }
      h = identity();
      fresh = true;
      continue;
    }

    Point<N> s{}, y{};
    for (std::size_t i = 0; i < N; ++i) {
      s[i] = xn[i] - x[i];
      y[i] = gnew[i] - g[i];
    }
    const double sy = dot(s, y);
    if (sy > 1e-14 * norm(s) * norm(y)) {
      if (fresh) {
        // Shanno-Phua scaling of the initial inverse Hessian.
        const double scale = sy / dot(y, y);
        for (auto& e : h) e *= scale;
      }
      // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
      const double rho = 1.0 / sy;
      Point<N> hy{};
      for (std::size_t i = 0; i < N; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < N; ++j) acc += h[i * N + j] * y[j];
        hy[i] = acc;
      }
      const double yhy = dot(y, hy);
      for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
          h[i * N + j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) +
                          (rho * rho * yhy + rho) * s[i] * s[j];
        }
      }
      fresh = false;
    }
    stagnant = f - fn <= 1e-14 * std::max(1.0, std::abs(f)) ? stagnant + 1 : 0;
    x = xn;
    f = fn;
    g = gnew;
    if (escaped(x)) {
      res.escaped = true;
      break;
    }
  }
  res.x = x;
  res.value = f;
  res.grad_norm = norm(g);
  return res;
}

}  // namespace hankel::detail
