#pragma once

#include <array>
#include <vector>

#include "hankel/core.hpp"

namespace hankel {

/// Coefficients of a quadratic form over quadratic_basis().
using QuadraticForm = std::array<double, kNumQuadraticMonomials>;

/// weight * (form . z)^2, where z is the degree-2 monomial vector.
struct WeightedSquare {
  double weight = 0.0;
  QuadraticForm form{};
};

struct SosDecomposition {
  std::vector<WeightedSquare> squares;
};

/// sum_k weight_k (q_k . z)^2 as a dense quartic.
QuarticForm expand_squares(const SosDecomposition& dec);

/// Quadratic form q . z at x.
double evaluate_quadratic(const QuadraticForm& q, const Vec4& x);

}  // namespace hankel
