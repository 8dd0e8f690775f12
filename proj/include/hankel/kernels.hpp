#pragma once

// Batched evaluation of a quartic form at many points.
//
// Points are passed structure-of-arrays. Each instruction-set variant
// computes the same sum of 35 products; variants differ only in rounding
// (FMA contraction), which tests bound at 1e-12 relative.

#include <span>
#include <string_view>
#include <vector>

#include "hankel/core.hpp"

namespace hankel::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// Variants compiled into this binary and supported by the running CPU.
std::vector<Isa> available_isas();

/// Widest available variant. Resolved once per process.
Isa best_isa();

/// Structure-of-arrays view of n points; all four spans have equal length.
struct PointsView {
  std::span<const double> x1, x2, x3, x4;
  std::size_t size() const { return x1.size(); }
};

/// Owning counterpart of PointsView.
struct PointBatch {
  std::vector<double> x1, x2, x3, x4;

  void reserve(std::size_t n);
  void push_back(const Vec4& x);
  std::size_t size() const { return x1.size(); }
  Vec4 at(std::size_t i) const { return {{x1[i], x2[i], x3[i], x4[i]}}; }
  PointsView view() const { return {x1, x2, x3, x4}; }
};

/// out[i] = q(x_i). Throws std::invalid_argument on length mismatch.
void evaluate_batch(const QuarticForm& q, PointsView points, std::span<double> out);

/// Same, forcing a specific variant. Throws std::invalid_argument if the
/// variant is not in available_isas().
void evaluate_batch(Isa isa, const QuarticForm& q, PointsView points, std::span<double> out);

namespace detail {
// Per-variant entry points. Preconditions checked by the dispatcher.
void evaluate_scalar(const QuarticForm& q, PointsView points, std::span<double> out);
void evaluate_avx2(const QuarticForm& q, PointsView points, std::span<double> out);
void evaluate_neon(const QuarticForm& q, PointsView points, std::span<double> out);

// Quadratic-basis factor pairs (i, j) with basis[i] * basis[j] == quartic_indices()[k].
struct FactorPair {
  int i;
  int j;
};
const std::array<FactorPair, kNumQuarticMonomials>& factor_pairs();
}  // namespace detail

}  // namespace hankel::kernels
