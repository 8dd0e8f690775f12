#include "hankel/psd_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "detail/local_descent.hpp"
#include "hankel/conditions.hpp"
#include "hankel/errors.hpp"
#include "hankel/kernels.hpp"

namespace hankel {
namespace {

constexpr double kCoordinateCap = 1e3;
constexpr std::array<double, 4> kStartScales = {0.5, 1.0, 2.0, 4.0};

// Hyperspherical product grid over half of S^3 (f is even).
kernels::PointBatch sphere_grid(int resolution) {
  kernels::PointBatch pts;
  const auto n = static_cast<std::size_t>(resolution);
  pts.reserve(n * n * n);
  const double step = std::numbers::pi / resolution;
  for (int i = 0; i < resolution; ++i) {
    const double a = i * step;
    for (int j = 0; j < resolution; ++j) {
      const double b = j * step;
      for (int k = 0; k < resolution; ++k) {
        const double c = 2.0 * k * step;
        pts.push_back({{std::cos(a), std::sin(a) * std::cos(b), std::sin(a) * std::sin(b) * std::cos(c),
                        std::sin(a) * std::sin(b) * std::sin(c)}});
      }
    }
  }
  return pts;
}

// Indices of the `count` smallest scores, ascending, ties by index.
std::vector<std::size_t> smallest(const std::vector<double>& scores, std::size_t count) {
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  count = std::min(count, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return scores[a] < scores[b] || (scores[a] == scores[b] && a < b);
                    });
  order.resize(count);
  return order;
}

struct SliceCoords {
  Vec4 x;
  double dx1 = 0.0;  // d x1 / d phi
  double dx4 = 0.0;  // d x4 / d phi
};

SliceCoords slice_coords(const detail::Point<3>& p) {
  const double c = std::cos(p[0]), s = std::sin(p[0]);
  const double n4 = c * c * c * c + s * s * s * s;
  const double n = std::sqrt(std::sqrt(n4));
  // d n / d phi = c s (s^2 - c^2) / n^3
  const double dn = c * s * (s * s - c * c) / (n * n * n);
  SliceCoords out;
  out.x = {{c / n, p[1], p[2], s / n}};
  out.dx1 = -s / n - c * dn / (n * n);
  out.dx4 = c / n - s * dn / (n * n);
  return out;
}

detail::Point<3> to_slice_params(const Vec4& x) {
  const double n4 = std::pow(x[0], 4) + std::pow(x[3], 4);
  const double scale = 1.0 / std::sqrt(std::sqrt(n4));
  return {std::atan2(x[3], x[0]), x[1] * scale, x[2] * scale};
}

void normalize(Vec4& x) {
  const double n = x.norm();
  if (n > 0.0) x = x.scaled(1.0 / n);
}

// F(x) = f(x) / |x|^4 and its gradient; on the unit sphere the gradient
// equals the projected gradient of f because x . grad f = 4 f.
struct SphereObjective {
  const GeneratingVector& v;
  double operator()(const detail::Point<4>& q, detail::Point<4>& g) const {
    const Vec4 x{q};
    const double n2 = x.dot(x);
    const double f = evaluate(v, x);
    const Vec4 gr = gradient(v, x);
    const double inv4 = 1.0 / (n2 * n2);
    for (std::size_t i = 0; i < 4; ++i) g[i] = gr[i] * inv4 - 4.0 * f * x[i] * inv4 / n2;
    return f * inv4;
  }
};

void retract_to_sphere(detail::Point<4>& q) {
  Vec4 x{q};
  normalize(x);
  q = x.x;
}

bool never_escapes(const detail::Point<4>&) { return false; }

// Merge by value with ties broken by lowest start index.
struct Best {
  BoundResult result;
  bool any = false;
  double score = 0.0;  // minimized

  void offer(double s, const Vec4& witness, bool converged) {
    if (!any || s < score) {
      any = true;
      score = s;
      result.witness = witness;
      result.converged = converged;
    }
  }
};

}  // namespace

void SearchOptions::validate() const {
  if (n_starts < 1) throw std::invalid_argument("n_starts must be >= 1");
  if (grid_resolution < 8) throw std::invalid_argument("grid_resolution must be >= 8");
  if (!(grad_tol > 0.0)) throw std::invalid_argument("grad_tol must be positive");
  if (max_iters_per_start < 1) throw std::invalid_argument("max_iters_per_start must be >= 1");
}

BoundResult n0(const SlicePoint& p, const SearchOptions& opts) {
  opts.validate();
  if (!p.is_finite()) throw std::invalid_argument("slice point must be finite");
  if (!in_effective_domain(p, opts.admit_boundary)) {
    throw OutsideEffectiveDomain("eta(v5, v6) = " + std::to_string(eta(p.v5, p.v6)) +
                                 " outside the effective domain: N0 is undefined");
  }
  const GeneratingVector rem = assemble(p, 0.0);
  const QuarticForm rq = to_quartic(rem);

  // r(x(phi, x2, x3)); minimizing r maximizes h = -r.
  auto fg = [&](const detail::Point<3>& q, detail::Point<3>& g) {
    const SliceCoords sc = slice_coords(q);
    const Vec4 gr = gradient(rem, sc.x);
    g = {gr[0] * sc.dx1 + gr[3] * sc.dx4, gr[1], gr[2]};
    return evaluate(rem, sc.x);
  };
  auto wrap = [](detail::Point<3>&) {};
  auto escaped = [](const detail::Point<3>& q) {
    return std::abs(q[1]) > kCoordinateCap || std::abs(q[2]) > kCoordinateCap;
  };
  const detail::DescentOptions dopts{opts.grad_tol, opts.max_iters_per_start};

  std::vector<detail::Point<3>> starts;
  starts.reserve(static_cast<std::size_t>(opts.n_starts + kGridSeeds));
  {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int s = 0; s < opts.n_starts; ++s) {
      const double scale = kStartScales[static_cast<std::size_t>(s) % kStartScales.size()];
      const double phi = angle(rng);
      const double x2 = scale * normal(rng);
      const double x3 = scale * normal(rng);
      starts.push_back({phi, x2, x3});
    }
  }
  {
    const kernels::PointBatch grid = sphere_grid(opts.grid_resolution);
    std::vector<double> r(grid.size());
    kernels::evaluate_batch(rq, grid.view(), r);
    std::vector<double> score(grid.size(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double den = std::pow(grid.x1[i], 4) + std::pow(grid.x4[i], 4);
      if (den > 1e-8) score[i] = r[i] / den;
    }
    for (std::size_t i : smallest(score, kGridSeeds)) {
      if (std::isfinite(score[i])) starts.push_back(to_slice_params(grid.at(i)));
    }
  }

  Best best;
  bool any_converged = false;
  for (const auto& s : starts) {
    const auto run = detail::bfgs_minimize<3>(fg, s, dopts, wrap, escaped);
    if (run.escaped || !std::isfinite(run.value)) continue;
    any_converged = any_converged || run.converged;
    best.offer(run.value, slice_coords(run.x).x, run.converged);
  }
  best.result.starts_used = static_cast<int>(starts.size());
  if (!any_converged || !best.any) {
    throw NonConvergence("n0: no local search met the gradient tolerance");
  }
  best.result.value = -best.score;
  return best.result;
}

BoundResult minimize_on_sphere(const GeneratingVector& v, const SearchOptions& opts,
                               std::span<const Vec4> extra_starts) {
  opts.validate();
  const SphereObjective fg{v};
  const detail::DescentOptions dopts{opts.grad_tol, opts.max_iters_per_start};

  std::vector<Vec4> starts;
  {
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int s = 0; s < opts.n_starts; ++s) {
      Vec4 x{{normal(rng), normal(rng), normal(rng), normal(rng)}};
      starts.push_back(x);
    }
  }
  {
    const kernels::PointBatch grid = sphere_grid(opts.grid_resolution);
    std::vector<double> f(grid.size());
    kernels::evaluate_batch(to_quartic(v), grid.view(), f);
    for (std::size_t i : smallest(f, kGridSeeds)) starts.push_back(grid.at(i));
  }
  for (const Vec4& x : extra_starts) {
    if (x.is_finite() && x.norm() > 0.0) starts.push_back(x);
  }

  Best best;
  bool any_converged = false;
  for (const Vec4& s : starts) {
    const auto run = detail::bfgs_minimize<4>(fg, s.x, dopts, retract_to_sphere, never_escapes);
    if (!std::isfinite(run.value)) continue;
    any_converged = any_converged || run.converged;
    best.offer(run.value, Vec4{run.x}, run.converged);
  }
  best.result.starts_used = static_cast<int>(starts.size());
  if (!any_converged || !best.any) {
    throw NonConvergence("minimize_on_sphere: no local search met the gradient tolerance");
  }
  best.result.value = best.score;
  return best.result;
}

double grid_oracle_min(const GeneratingVector& v, int resolution) {
  if (resolution < 8) throw std::invalid_argument("grid resolution must be >= 8");
  const kernels::PointBatch grid = sphere_grid(resolution);
  std::vector<double> f(grid.size());
  kernels::evaluate_batch(to_quartic(v), grid.view(), f);
  const std::size_t i = smallest(f, 1).front();
  double best = f[i];

  const SphereObjective fg{v};
  const auto run = detail::bfgs_minimize<4>(fg, grid.at(i).x, detail::DescentOptions{1e-12, 5000},
                                            retract_to_sphere, never_escapes);
  if (std::isfinite(run.value)) best = std::min(best, run.value);
  return best;
}

}  // namespace hankel
