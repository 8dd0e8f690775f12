#include "hankel/sos_bound.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>
#include <stdexcept>

#include "hankel/conditions.hpp"
#include "hankel/errors.hpp"

namespace hankel {
namespace {

constexpr std::size_t kDim = GramMatrix::kDim;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const std::array<double, kDim * kDim>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) {
      if (i != j) s += a[i * kDim + j] * a[i * kDim + j];
    }
  }
  return std::sqrt(s);
}

// Cyclic Jacobi on `a` (overwritten), accumulating rotations into `v`.
int jacobi_sweeps(std::array<double, kDim * kDim>& a, std::array<double, kDim * kDim>& v,
                  double threshold) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * kDim + j]; };
  for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) return sweep;
    if (sweep == kMaxSweeps) break;
    for (std::size_t p = 0; p + 1 < kDim; ++p) {
      for (std::size_t q = p + 1; q < kDim; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < kDim; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < kDim; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        for (std::size_t k = 0; k < kDim; ++k) {
          const double vkp = v[k * kDim + p], vkq = v[k * kDim + q];
          v[k * kDim + p] = c * vkp - s * vkq;
          v[k * kDim + q] = s * vkp + c * vkq;
        }
      }
    }
  }
  throw NonConvergence("jacobi_eigen: off-diagonal mass above tolerance after 100 sweeps");
}

EigenDecomposition sorted_decomposition(const std::array<double, kDim * kDim>& a,
                                        const std::array<double, kDim * kDim>& v, int sweeps) {
  std::array<std::size_t, kDim> order{};
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a[x * kDim + x] < a[y * kDim + y]; });
  EigenDecomposition out;
  out.sweeps = sweeps;
  for (std::size_t k = 0; k < kDim; ++k) {
    out.values[k] = a[order[k] * kDim + order[k]];
    for (std::size_t i = 0; i < kDim; ++i) out.vectors(i, k) = v[i * kDim + order[k]];
  }
  return out;
}

// V diag(max(lambda, 0)) V^T
GramMatrix reconstruct_clamped(const EigenDecomposition& e) {
  GramMatrix out;
  for (std::size_t k = 0; k < kDim; ++k) {
    const double lam = e.values[k];
    if (lam <= 0.0) continue;
    for (std::size_t i = 0; i < kDim; ++i) {
      const double vi = lam * e.vectors(i, k);
      if (vi == 0.0) continue;
      for (std::size_t j = 0; j < kDim; ++j) out(i, j) += vi * e.vectors(j, k);
    }
  }
  // Exact symmetry.
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = i + 1; j < kDim; ++j) {
      const double m = 0.5 * (out(i, j) + out(j, i));
      out(i, j) = m;
      out(j, i) = m;
    }
  }
  return out;
}

// Diagonal change of variables x = D y making positive x_k^4 coefficients 1.
struct Equilibration {
  std::array<double, 4> d{1.0, 1.0, 1.0, 1.0};
  std::array<double, kDim> basis_scale{};  // z_m(D y) = basis_scale[m] z_m(y)

  static Equilibration for_form(const QuarticForm& q, bool enabled) {
    Equilibration e;
    if (enabled) {
      for (std::size_t k = 0; k < 4; ++k) {
        MultiIndex a{0, 0, 0, 0};
        a[k] = 4;
        const double c = q.coefficient(a);
        if (c > 0.0) e.d[k] = 1.0 / std::sqrt(std::sqrt(c));
      }
    }
    const auto& basis = quadratic_basis();
    for (std::size_t m = 0; m < kDim; ++m) {
      double s = 1.0;
      for (std::size_t k = 0; k < 4; ++k) s *= std::pow(e.d[k], basis[m][k]);
      e.basis_scale[m] = s;
    }
    return e;
  }

  QuarticForm scaled(const QuarticForm& q) const {
    QuarticForm out;
    const auto& idx = quartic_indices();
    for (std::size_t k = 0; k < kNumQuarticMonomials; ++k) {
      double s = q[k];
      for (std::size_t i = 0; i < 4; ++i) s *= std::pow(d[i], idx[k][i]);
      out[k] = s;
    }
    return out;
  }

  // Gram of f(x) from the Gram of f(D y): G = S^-1 G' S^-1.
  GramMatrix unscaled(const GramMatrix& g) const {
    GramMatrix out;
    for (std::size_t i = 0; i < kDim; ++i) {
      for (std::size_t j = 0; j < kDim; ++j) out(i, j) = g(i, j) / (basis_scale[i] * basis_scale[j]);
    }
    return out;
  }
};

double min_eigenvalue(const GramMatrix& g) { return jacobi_eigen(g).values[0]; }

}  // namespace

GramMatrix GramMatrix::identity() {
  GramMatrix g;
  for (std::size_t i = 0; i < kDim; ++i) g(i, i) = 1.0;
  return g;
}

GramMatrix GramMatrix::diagonal(const std::array<double, kDim>& d) {
  GramMatrix g;
  for (std::size_t i = 0; i < kDim; ++i) g(i, i) = d[i];
  return g;
}

GramMatrix GramMatrix::outer(const std::array<double, kDim>& u) {
  GramMatrix g;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) g(i, j) = u[i] * u[j];
  }
  return g;
}

double GramMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < kDim; ++i) t += (*this)(i, i);
  return t;
}

double GramMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double x : a_) s += x * x;
  return std::sqrt(s);
}

double GramMatrix::asymmetry() const {
  double m = 0.0;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = i + 1; j < kDim; ++j) m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
  }
  return m;
}

bool GramMatrix::is_finite() const {
  return std::all_of(a_.begin(), a_.end(), [](double x) { return std::isfinite(x); });
}

GramMatrix GramMatrix::transposed() const {
  GramMatrix t;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

GramMatrix GramMatrix::operator*(const GramMatrix& o) const {
  GramMatrix r;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t k = 0; k < kDim; ++k) {
      const double aik = (*this)(i, k);
      for (std::size_t j = 0; j < kDim; ++j) r(i, j) += aik * o(k, j);
    }
  }
  return r;
}

GramMatrix& GramMatrix::operator+=(const GramMatrix& o) {
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

GramMatrix& GramMatrix::operator-=(const GramMatrix& o) {
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

GramMatrix& GramMatrix::operator*=(double t) {
  for (double& x : a_) x *= t;
  return *this;
}

QuarticForm gram_to_quartic(const GramMatrix& g) {
  QuarticForm q;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) q[product_position(i, j)] += g(i, j);
  }
  return q;
}

EigenDecomposition jacobi_eigen(const GramMatrix& g) {
  auto a = g.data();
  auto v = GramMatrix::identity().data();
  const int sweeps = jacobi_sweeps(a, v, 1e-12 * (1.0 + g.frobenius_norm()));
  return sorted_decomposition(a, v, sweeps);
}

EigenDecomposition jacobi_eigen(const GramMatrix& g, const GramMatrix& warm) {
  const GramMatrix b = warm.transposed() * g * warm;
  auto a = b.data();
  auto v = GramMatrix::identity().data();
  const int sweeps = jacobi_sweeps(a, v, 1e-12 * (1.0 + g.frobenius_norm()));
  EigenDecomposition e = sorted_decomposition(a, v, sweeps);
  e.vectors = warm * e.vectors;
  return e;
}

GramMatrix project_psd(const GramMatrix& g) { return reconstruct_clamped(jacobi_eigen(g)); }

ConstraintSystem build_constraints(const QuarticForm& q) {
  ConstraintSystem sys;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = i; j < kDim; ++j) {
      auto& grp = sys.groups[product_position(i, j)];
      grp.pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
      grp.entries += (i == j) ? 1 : 2;
    }
  }
  for (std::size_t k = 0; k < kNumQuarticMonomials; ++k) sys.groups[k].target = q[k];
  return sys;
}

std::array<double, kNumQuarticMonomials> ConstraintSystem::residuals(const GramMatrix& g) const {
  std::array<double, kNumQuarticMonomials> r{};
  for (std::size_t k = 0; k < kNumQuarticMonomials; ++k) {
    double s = 0.0;
    for (auto [i, j] : groups[k].pairs) {
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      s += (i == j) ? g(ui, uj) : g(ui, uj) + g(uj, ui);
    }
    r[k] = groups[k].target - s;
  }
  return r;
}

double ConstraintSystem::residual_norm(const GramMatrix& g) const {
  double s = 0.0;
  for (double r : residuals(g)) s += r * r;
  return std::sqrt(s);
}

GramMatrix ConstraintSystem::project(const GramMatrix& g) const {
  // The groups partition the entries, so the normal matrix A A^T is
  // diag(entries) and the correction spreads evenly within each group.
  const auto r = residuals(g);
  GramMatrix out = g;
  for (std::size_t k = 0; k < kNumQuarticMonomials; ++k) {
    const double d = r[k] / groups[k].entries;
    for (auto [i, j] : groups[k].pairs) {
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      out(ui, uj) += d;
      if (i != j) out(uj, ui) += d;
    }
  }
  return out;
}

namespace {

// One Gram entry of a sparse symmetric direction (both triangles listed).
struct SparseEntry {
  std::size_t i, j;
  double value;
};
using SparseSym = std::vector<SparseEntry>;

// Directions spanning the null space of the constraint map: within a group,
// moving weight from its first pair to another pair leaves every monomial
// coefficient unchanged. 55 upper-triangle unknowns, 35 groups: 20 directions.
std::vector<SparseSym> constraint_null_space(const ConstraintSystem& sys) {
  auto unit = [](std::pair<int, int> p, double sign) {
    const auto i = static_cast<std::size_t>(p.first), j = static_cast<std::size_t>(p.second);
    if (i == j) return SparseSym{{i, i, sign}};
    return SparseSym{{i, j, 0.5 * sign}, {j, i, 0.5 * sign}};
  };
  std::vector<SparseSym> basis;
  for (const auto& grp : sys.groups) {
    for (std::size_t k = 1; k < grp.pairs.size(); ++k) {
      SparseSym n = unit(grp.pairs[k], 1.0);
      for (const auto& e : unit(grp.pairs[0], -1.0)) n.push_back(e);
      basis.push_back(std::move(n));
    }
  }
  return basis;
}

// log det of a symmetric matrix by Cholesky; nullopt unless positive definite.
std::optional<double> log_det_pd(const GramMatrix& s) {
  constexpr std::size_t n = GramMatrix::kDim;
  GramMatrix l;
  double logdet = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double d = s(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) return std::nullopt;
    l(j, j) = std::sqrt(d);
    logdet += std::log(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = s(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / l(j, j);
    }
  }
  return logdet;
}

// Dense solve by Gaussian elimination with partial pivoting; false if singular.
bool solve_dense(std::vector<double>& a, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r * n + c]) > std::abs(a[p * n + c])) p = r;
    }
    if (a[p * n + c] == 0.0) return false;
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[p * n + k], a[c * n + k]);
      std::swap(b[p], b[c]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t c = n; c-- > 0;) {
    for (std::size_t k = c + 1; k < n; ++k) b[c] -= a[c * n + k] * b[k];
    b[c] /= a[c * n + c];
  }
  return true;
}

// Barrier method for  max t  s.t.  G0 + sum y_k N_k - t I >= 0  over the
// affine constraint set. Unlike the projection iterations it converges fast
// when the only Gram matrices are singular (q on the boundary of the SOS
// cone). Returns a PSD Gram matrix with residual <= threshold, or nullopt
// once the optimal t is certified below -threshold / 16.
std::optional<GramMatrix> barrier_search(const ConstraintSystem& sys, double threshold) {
  constexpr std::size_t n = GramMatrix::kDim;
  const std::vector<SparseSym> dirs = constraint_null_space(sys);
  const std::size_t m = dirs.size() + 1;  // y and t
  const GramMatrix g0 = sys.project(GramMatrix{});
  const double margin = threshold / 16.0;

  std::vector<double> x(m, 0.0);
  auto gram_at = [&](const std::vector<double>& v) {
    GramMatrix g = g0;
    for (std::size_t k = 0; k + 1 < m; ++k) {
      for (const auto& e : dirs[k]) g(e.i, e.j) += v[k] * e.value;
    }
    return g;
  };
  auto slack_at = [&](const std::vector<double>& v) {
    GramMatrix s = gram_at(v);
    for (std::size_t i = 0; i < n; ++i) s(i, i) -= v[m - 1];
    return s;
  };
  auto accept = [&](const std::vector<double>& v) -> std::optional<GramMatrix> {
    const GramMatrix psd = project_psd(gram_at(v));
    if (sys.residual_norm(psd) <= threshold) return psd;
    return std::nullopt;
  };

  const EigenDecomposition e0 = jacobi_eigen(g0);
  x[m - 1] = e0.values[0] - std::max(1.0, 0.1 * std::abs(e0.values[n - 1] - e0.values[0]));
  double tau = 1.0 / std::max(1.0, std::abs(x[m - 1]));

  for (int outer = 0; outer < 40; ++outer) {
    for (int newton = 0; newton < 100; ++newton) {
      const GramMatrix s = slack_at(x);
      const EigenDecomposition e = jacobi_eigen(s);
      GramMatrix w;  // S^-1
      for (std::size_t k = 0; k < n; ++k) {
        const double inv = 1.0 / e.values[k];
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) w(i, j) += inv * e.vectors(i, k) * e.vectors(j, k);
        }
      }
      const GramMatrix w2 = w * w;
      std::vector<double> grad(m), hess(m * m);
      for (std::size_t a = 0; a + 1 < m; ++a) {
        double g = 0.0, ht = 0.0;
        for (const auto& p : dirs[a]) {
          g -= p.value * w(p.j, p.i);
          ht -= p.value * w2(p.j, p.i);
        }
        grad[a] = g;
        hess[a * m + (m - 1)] = hess[(m - 1) * m + a] = ht;
        for (std::size_t b = a; b + 1 < m; ++b) {
          double h = 0.0;
          for (const auto& p : dirs[a]) {
            for (const auto& q : dirs[b]) h += p.value * q.value * w(p.j, q.i) * w(q.j, p.i);
          }
          hess[a * m + b] = hess[b * m + a] = h;
        }
      }
      grad[m - 1] = -tau + w.trace();
      hess[(m - 1) * m + (m - 1)] = w2.trace();

      std::vector<double> step(grad);
      for (double& v : step) v = -v;
      if (!solve_dense(hess, step)) return std::nullopt;
      const double decrement = -std::inner_product(grad.begin(), grad.end(), step.begin(), 0.0);
      if (decrement < 1e-12) break;

      const double logdet = std::accumulate(e.values.begin(), e.values.end(), 0.0,
                                            [](double acc, double l) { return acc + std::log(l); });
      const double f = -tau * x[m - 1] - logdet;
      double alpha = 1.0;
      std::vector<double> trial(m);
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        for (std::size_t k = 0; k < m; ++k) trial[k] = x[k] + alpha * step[k];
        const auto ld = log_det_pd(slack_at(trial));
        if (ld && -tau * trial[m - 1] - *ld <= f - 0.25 * alpha * decrement) {
          moved = true;
          break;
        }
      }
      if (!moved) break;
      x = trial;
      if (x[m - 1] > 0.0) return accept(x);  // a positive definite Gram matrix
    }
    const double gap = static_cast<double>(n) / tau;
    if (x[m - 1] + 2.0 * gap < -margin) return std::nullopt;
    if (gap <= 0.1 * margin) return accept(x);
    tau *= 10.0;
  }
  return accept(x);
}

}  // namespace

FeasResult sos_feasible(const QuarticForm& q, const FeasOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("sos_feasible: tol must be positive");
  if (opts.max_iter < 1) throw std::invalid_argument("sos_feasible: max_iter must be >= 1");
  if (!q.is_finite()) throw std::invalid_argument("sos_feasible: non-finite coefficients");

  FeasResult res;
  const ConstraintSystem original = build_constraints(q);
  for (std::size_t k = 0; k < 4; ++k) {
    MultiIndex a{0, 0, 0, 0};
    a[k] = 4;
    if (q.coefficient(a) < 0.0) {
      // f(e_k) < 0: not even PSD.
      res.residual = original.residual_norm(GramMatrix{});
      return res;
    }
  }

  const Equilibration eq = Equilibration::for_form(q, opts.equilibrate);
  const QuarticForm qs = eq.scaled(q);
  const ConstraintSystem sys = build_constraints(qs);
  const double threshold = opts.tol * (1.0 + qs.max_abs());

  GramMatrix z = sys.project(GramMatrix{});
  GramMatrix basis = GramMatrix::identity();
  GramMatrix psd;
  double residual = 0.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    const EigenDecomposition e = jacobi_eigen(z, basis);
    basis = e.vectors;
    psd = reconstruct_clamped(e);
    residual = sys.residual_norm(psd);
    res.iterations = it;
    if (residual <= threshold) {
      const GramMatrix gram = eq.unscaled(psd);
      res.status = FeasStatus::Feasible;
      res.residual = original.residual_norm(gram);
      res.min_eigenvalue = min_eigenvalue(gram);
      res.gram = gram;
      return res;
    }
    if (opts.scheme == ProjectionScheme::DouglasRachford) {
      // z <- z + P_A(2 P_C(z) - z) - P_C(z)
      GramMatrix reflected = 2.0 * psd - z;
      z += opts.relaxation * (sys.project(reflected) - psd);
    } else {
      z = sys.project(psd);
    }
  }
  if (opts.barrier_fallback) {
    if (auto gram_s = barrier_search(sys, threshold)) {
      const GramMatrix gram = eq.unscaled(*gram_s);
      res.status = FeasStatus::Feasible;
      res.residual = original.residual_norm(gram);
      res.min_eigenvalue = min_eigenvalue(gram);
      res.gram = gram;
      return res;
    }
  }
  const GramMatrix last = eq.unscaled(psd);
  res.residual = original.residual_norm(last);
  res.min_eigenvalue = min_eigenvalue(eq.unscaled(sys.project(psd)));
  return res;
}

FeasResult sos_feasible(const QuarticForm& q, double tol, int max_iter) {
  FeasOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  return sos_feasible(q, opts);
}

SosDecomposition extract_decomposition(const GramMatrix& g) {
  const EigenDecomposition e = jacobi_eigen(g);
  const double floor = -1e-8 * (1.0 + std::abs(g.trace()));
  if (e.values[0] < floor) {
    throw std::invalid_argument("extract_decomposition: Gram matrix has eigenvalue " +
                                std::to_string(e.values[0]) + " below the PSD tolerance");
  }
  const double lmax = std::max(0.0, e.values[kDim - 1]);
  SosDecomposition dec;
  for (std::size_t k = kDim; k-- > 0;) {
    const double lam = e.values[k];
    if (lam <= 1e-13 * lmax || lam <= 0.0) continue;
    WeightedSquare sq;
    sq.weight = 1.0;
    const double r = std::sqrt(lam);
    for (std::size_t i = 0; i < kDim; ++i) sq.form[i] = r * e.vectors(i, k);
    dec.squares.push_back(sq);
  }
  if (dec.squares.empty()) dec.squares.push_back(WeightedSquare{});
  return dec;
}

void M0Options::validate() const {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
  if (!(feas_tol > 0.0)) throw std::invalid_argument("feas_tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  search.validate();
}

BoundResult m0(const SlicePoint& p, const M0Options& opts, const std::optional<BoundResult>& n0_hint) {
  opts.validate();
  if (!p.is_finite()) throw std::invalid_argument("slice point must be finite");
  if (!in_effective_domain(p, opts.search.admit_boundary)) {
    throw OutsideEffectiveDomain("eta(v5, v6) = " + std::to_string(eta(p.v5, p.v6)) +
                                 " outside the effective domain: M0 is undefined");
  }
  std::optional<BoundResult> psd = n0_hint;
  if (!psd) {
    try {
      psd = n0(p, opts.search);
    } catch (const NonConvergence&) {
      psd.reset();
    }
  }

  FeasOptions fopts;
  fopts.tol = opts.feas_tol;
  fopts.max_iter = opts.max_iter;
  fopts.scheme = opts.scheme;
  auto feasible = [&](double v0) {
    return sos_feasible(to_quartic(assemble(p, v0)), fopts).status == FeasStatus::Feasible;
  };

  // The searched value is attained, so N0 >= it and no smaller v0 is SOS.
  // Near a degenerate boundary the residual test alone would accept v0
  // slightly below it (the distance to the SOS cone is only quadratic there).
  double lower = 0.0;
  if (psd) lower = psd->value;
  double upper = std::max(1.0, psd ? 2.0 * psd->value : 1.0);
  const double cap = 1e9 * std::max(1.0, p.max_abs());
  while (!feasible(upper)) {
    lower = std::max(lower, upper);
    upper *= 2.0;
    if (upper > cap) throw NonConvergence("m0: no SOS upper bracket below 1e9 max(1, |P|)");
  }
  while (upper - lower > opts.rel_tol * std::max(1.0, upper)) {
    const double mid = 0.5 * (lower + upper);
    if (feasible(mid)) {
      upper = mid;
    } else {
      lower = mid;
    }
  }

  BoundResult out;
  out.value = 0.5 * (lower + upper);
  out.converged = true;
  if (psd) {
    out.witness = psd->witness;
    out.starts_used = psd->starts_used;
  }
  return out;
}

}  // namespace hankel
