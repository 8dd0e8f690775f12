#pragma once

// SOS membership of quartic forms via Gram-matrix semidefinite feasibility,
// and M0(P): the smallest v0 for which the symmetric Hankel quartic at P is
// a sum of squares.
//
// A quartic f is SOS iff f(x) = z(x)^T G z(x) for some PSD 10x10 G over the
// degree-2 monomials z. Each product z_i z_j is one quartic monomial, so the
// linear constraints split into 35 disjoint groups of Gram entries.

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "hankel/core.hpp"
#include "hankel/decomposition.hpp"
#include "hankel/psd_bound.hpp"

namespace hankel {

/// Dense symmetric 10x10 matrix, row-major.
class GramMatrix {
 public:
  static constexpr std::size_t kDim = kNumQuadraticMonomials;

  GramMatrix() = default;
  explicit GramMatrix(const std::array<double, kDim * kDim>& a) : a_(a) {}
  static GramMatrix identity();
  static GramMatrix diagonal(const std::array<double, kDim>& d);
  /// u u^T
  static GramMatrix outer(const std::array<double, kDim>& u);

  double operator()(std::size_t i, std::size_t j) const { return a_[i * kDim + j]; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * kDim + j]; }
  const std::array<double, kDim * kDim>& data() const { return a_; }

  double trace() const;
  double frobenius_norm() const;
  /// max |G_ij - G_ji|
  double asymmetry() const;
  bool is_finite() const;

  GramMatrix transposed() const;
  GramMatrix operator*(const GramMatrix& o) const;
  GramMatrix& operator+=(const GramMatrix& o);
  GramMatrix& operator-=(const GramMatrix& o);
  GramMatrix& operator*=(double t);
  friend GramMatrix operator+(GramMatrix a, const GramMatrix& b) { return a += b; }
  friend GramMatrix operator-(GramMatrix a, const GramMatrix& b) { return a -= b; }
  friend GramMatrix operator*(double t, GramMatrix a) { return a *= t; }

 private:
  std::array<double, kDim * kDim> a_{};
};

/// z^T G z as a quartic form.
QuarticForm gram_to_quartic(const GramMatrix& g);

struct EigenDecomposition {
  std::array<double, GramMatrix::kDim> values{};  // ascending
  GramMatrix vectors;                             // column k pairs with values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is at most
/// 1e-12 (1 + |G|_F). Throws NonConvergence after 100 sweeps.
EigenDecomposition jacobi_eigen(const GramMatrix& g);

/// Same, rotating in the basis `warm` (orthogonal) first; the iteration
/// starts nearly diagonal when `warm` came from a nearby matrix.
EigenDecomposition jacobi_eigen(const GramMatrix& g, const GramMatrix& warm);

/// Nearest PSD matrix in Frobenius norm: negative eigenvalues clamped to 0.
GramMatrix project_psd(const GramMatrix& g);

/// Linear constraints sum_{(i,j) -> a} G_ij = c_a, one per quartic monomial.
struct ConstraintSystem {
  struct Group {
    std::vector<std::pair<int, int>> pairs;  // i <= j; i < j stands for G_ij + G_ji
    int entries = 0;                         // ordered entries (i, j) in the group
    double target = 0.0;
  };
  std::array<Group, kNumQuarticMonomials> groups;

  /// Per-monomial residual c_a - sum G_ij.
  std::array<double, kNumQuarticMonomials> residuals(const GramMatrix& g) const;
  /// Euclidean norm of residuals().
  double residual_norm(const GramMatrix& g) const;
  /// Frobenius-orthogonal projection onto the affine constraint set.
  GramMatrix project(const GramMatrix& g) const;
};

ConstraintSystem build_constraints(const QuarticForm& q);

enum class FeasStatus { Feasible, Undetermined };

struct FeasResult {
  FeasStatus status = FeasStatus::Undetermined;
  std::optional<GramMatrix> gram;  // PSD; present iff Feasible
  double residual = 0.0;           // constraint residual norm, original coordinates
  double min_eigenvalue = 0.0;     // of the returned gram (or last iterate)
  int iterations = 0;
};

enum class ProjectionScheme {
  DouglasRachford,         // reflected projections
  AlternatingProjections,  // plain von Neumann alternation
};

struct FeasOptions {
  double tol = 1e-8;
  int max_iter = 50000;
  ProjectionScheme scheme = ProjectionScheme::DouglasRachford;
  /// Rescale x_k so every positive x_k^4 coefficient becomes 1 before iterating.
  bool equilibrate = true;
  /// Douglas-Rachford relaxation factor in (0, 2); 1 is the plain scheme.
  double relaxation = 1.0;
  /// When the projections exhaust max_iter, run a barrier method that
  /// maximises the smallest Gram eigenvalue over the constraint set. The
  /// projections converge only sublinearly when every Gram matrix of q is
  /// singular; the barrier method does not.
  bool barrier_fallback = true;
};

/// Searches for a PSD Gram matrix of q with the PSD cone and constraint-set
/// projections. Feasible when the PSD iterate's constraint residual is at
/// most tol * (1 + max |c|) (in equilibrated coordinates); Undetermined
/// otherwise, unless the barrier fallback finds a PSD Gram matrix meeting the
/// same residual test. Throws std::invalid_argument if tol <= 0 or max_iter < 1.
FeasResult sos_feasible(const QuarticForm& q, const FeasOptions& opts);
FeasResult sos_feasible(const QuarticForm& q, double tol, int max_iter);

/// Squares sqrt(lambda_k) (u_k . z) from the eigenpairs of G (weights 1).
/// Eigenvalues down to -1e-8 (1 + trace) are clamped; more negative ones
/// throw std::invalid_argument.
SosDecomposition extract_decomposition(const GramMatrix& g);

struct M0Options {
  double rel_tol = 1e-4;
  double feas_tol = 1e-8;
  int max_iter = 50000;
  ProjectionScheme scheme = ProjectionScheme::DouglasRachford;
  SearchOptions search;  // for the N0 lower bracket

  void validate() const;
};

/// Bisection on v0 between a lower bracket just below N0 and a geometrically
/// grown feasible upper bracket. Undetermined counts as infeasible. `n0_hint`
/// skips the internal N0 search. Throws OutsideEffectiveDomain, or
/// NonConvergence if the upper bracket passes 1e9 max(1, |P|_inf).
BoundResult m0(const SlicePoint& p, const M0Options& opts = {},
               const std::optional<BoundResult>& n0_hint = std::nullopt);

}  // namespace hankel
