// Compiled with -mavx2 -mfma; only called after a runtime CPU check.
#include <immintrin.h>

#include "hankel/kernels.hpp"

namespace hankel::kernels::detail {

void evaluate_avx2(const QuarticForm& q, PointsView points, std::span<double> out) {
  const auto& pairs = factor_pairs();
  const auto& c = q.coefficients();
  const std::size_t n = points.size();
  std::size_t p = 0;
  for (; p + 4 <= n; p += 4) {
    const __m256d x1 = _mm256_loadu_pd(points.x1.data() + p);
    const __m256d x2 = _mm256_loadu_pd(points.x2.data() + p);
    const __m256d x3 = _mm256_loadu_pd(points.x3.data() + p);
    const __m256d x4 = _mm256_loadu_pd(points.x4.data() + p);
    const __m256d m[10] = {_mm256_mul_pd(x1, x1), _mm256_mul_pd(x1, x2), _mm256_mul_pd(x1, x3),
                           _mm256_mul_pd(x1, x4), _mm256_mul_pd(x2, x2), _mm256_mul_pd(x2, x3),
                           _mm256_mul_pd(x2, x4), _mm256_mul_pd(x3, x3), _mm256_mul_pd(x3, x4),
                           _mm256_mul_pd(x4, x4)};
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < kNumQuarticMonomials; ++k) {
      const __m256d mono = _mm256_mul_pd(m[pairs[k].i], m[pairs[k].j]);
      acc = _mm256_fmadd_pd(_mm256_set1_pd(c[k]), mono, acc);
    }
    _mm256_storeu_pd(out.data() + p, acc);
  }
  if (p < n) {
    evaluate_scalar(q,
                    {points.x1.subspan(p), points.x2.subspan(p), points.x3.subspan(p),
                     points.x4.subspan(p)},
                    out.subspan(p));
  }
}

}  // namespace hankel::kernels::detail
