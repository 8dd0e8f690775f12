#include "hankel/kernels.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hankel::kernels {

namespace detail {

const std::array<FactorPair, kNumQuarticMonomials>& factor_pairs() {
  static const auto pairs = [] {
    std::array<FactorPair, kNumQuarticMonomials> out{};
    std::array<bool, kNumQuarticMonomials> seen{};
    for (int i = 0; i < 10; ++i) {
      for (int j = i; j < 10; ++j) {
        const std::size_t k = product_position(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        if (!seen[k]) {
          out[k] = {i, j};
          seen[k] = true;
        }
      }
    }
    return out;
  }();
  return pairs;
}

void evaluate_scalar(const QuarticForm& q, PointsView points, std::span<double> out) {
  const auto& pairs = factor_pairs();
  const auto& c = q.coefficients();
  for (std::size_t n = 0; n < points.size(); ++n) {
    const double x1 = points.x1[n], x2 = points.x2[n], x3 = points.x3[n], x4 = points.x4[n];
    const double m[10] = {x1 * x1, x1 * x2, x1 * x3, x1 * x4, x2 * x2,
                          x2 * x3, x2 * x4, x3 * x3, x3 * x4, x4 * x4};
    double acc = 0.0;
    for (std::size_t k = 0; k < kNumQuarticMonomials; ++k) {
      acc += c[k] * (m[pairs[k].i] * m[pairs[k].j]);
    }
    out[n] = acc;
  }
}

#if !defined(HANKEL_HAVE_AVX2)
void evaluate_avx2(const QuarticForm& q, PointsView points, std::span<double> out) {
  evaluate_scalar(q, points, out);
}
#endif

#if !defined(HANKEL_HAVE_NEON)
void evaluate_neon(const QuarticForm& q, PointsView points, std::span<double> out) {
  evaluate_scalar(q, points, out);
}
#endif

}  // namespace detail

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::Scalar};
#if defined(HANKEL_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) out.push_back(Isa::Avx2);
#endif
#if defined(HANKEL_HAVE_NEON)
  out.push_back(Isa::Neon);
#endif
  return out;
}

Isa best_isa() {
  static const Isa isa = available_isas().back();
  return isa;
}

void PointBatch::reserve(std::size_t n) {
  x1.reserve(n);
  x2.reserve(n);
  x3.reserve(n);
  x4.reserve(n);
}

void PointBatch::push_back(const Vec4& x) {
  x1.push_back(x[0]);
  x2.push_back(x[1]);
  x3.push_back(x[2]);
  x4.push_back(x[3]);
}

void evaluate_batch(Isa isa, const QuarticForm& q, PointsView points, std::span<double> out) {
  const std::size_t n = points.size();
  if (points.x2.size() != n || points.x3.size() != n || points.x4.size() != n || out.size() != n) {
    throw std::invalid_argument("evaluate_batch: mismatched span lengths");
  }
  switch (isa) {
    case Isa::Scalar:
      detail::evaluate_scalar(q, points, out);
      return;
    case Isa::Avx2:
    case Isa::Neon: {
      const auto avail = available_isas();
      if (std::find(avail.begin(), avail.end(), isa) == avail.end()) {
        throw std::invalid_argument("kernel variant not available: " + std::string(isa_name(isa)));
      }
      if (isa == Isa::Avx2) {
        detail::evaluate_avx2(q, points, out);
      } else {
        detail::evaluate_neon(q, points, out);
      }
      return;
    }
  }
}

void evaluate_batch(const QuarticForm& q, PointsView points, std::span<double> out) {
  evaluate_batch(best_isa(), q, points, out);
}

}  // namespace hankel::kernels
