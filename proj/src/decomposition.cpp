#include "hankel/decomposition.hpp"

namespace hankel {

QuarticForm expand_squares(const SosDecomposition& dec) {
  QuarticForm out;
  for (const auto& sq : dec.squares) {
    for (std::size_t i = 0; i < kNumQuadraticMonomials; ++i) {
      if (sq.form[i] == 0.0) continue;
      for (std::size_t j = 0; j < kNumQuadraticMonomials; ++j) {
        out[product_position(i, j)] += sq.weight * sq.form[i] * sq.form[j];
      }
    }
  }
  return out;
}

double evaluate_quadratic(const QuadraticForm& q, const Vec4& x) {
  const auto& basis = quadratic_basis();
  double s = 0.0;
  for (std::size_t i = 0; i < kNumQuadraticMonomials; ++i) s += q[i] * monomial_value(basis[i], x);
  return s;
}

}  // namespace hankel
