#include <arm_neon.h>

#include "hankel/kernels.hpp"

namespace hankel::kernels::detail {

void evaluate_neon(const QuarticForm& q, PointsView points, std::span<double> out) {
  const auto& pairs = factor_pairs();
  const auto& c = q.coefficients();
  const std::size_t n = points.size();
  std::size_t p = 0;
  for (; p + 2 <= n; p += 2) {
    const float64x2_t x1 = vld1q_f64(points.x1.data() + p);
    const float64x2_t x2 = vld1q_f64(points.x2.data() + p);
    const float64x2_t x3 = vld1q_f64(points.x3.data() + p);
    const float64x2_t x4 = vld1q_f64(points.x4.data() + p);
    const float64x2_t m[10] = {vmulq_f64(x1, x1), vmulq_f64(x1, x2), vmulq_f64(x1, x3),
                               vmulq_f64(x1, x4), vmulq_f64(x2, x2), vmulq_f64(x2, x3),
                               vmulq_f64(x2, x4), vmulq_f64(x3, x3), vmulq_f64(x3, x4),
                               vmulq_f64(x4, x4)};
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t k = 0; k < kNumQuarticMonomials; ++k) {
      const float64x2_t mono = vmulq_f64(m[pairs[k].i], m[pairs[k].j]);
      acc = vfmaq_f64(acc, vdupq_n_f64(c[k]), mono);
    }
    vst1q_f64(out.data() + p, acc);
  }
  if (p < n) {
    evaluate_scalar(q,
                    {points.x1.subspan(p), points.x2.subspan(p), points.x3.subspan(p),
                     points.x4.subspan(p)},
                    out.subspan(p));
  }
}

}  // namespace hankel::kernels::detail
