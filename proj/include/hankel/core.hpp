#pragma once

// Fourth-order four-dimensional Hankel tensors and their quartic forms.
//
// A generating vector v = (v0, ..., v12) defines the tensor entry
// a[i1][i2][i3][i4] = v[i1 + i2 + i3 + i4 - 4] (1-based indices) and the
// homogeneous quartic f(x) = sum over all 4-tuples of a * x_i1 x_i2 x_i3 x_i4.

#include <array>
#include <cstddef>
#include <span>
#include <string>

namespace hankel {

/// The 13 numbers v0..v12 defining a Hankel tensor.
class GeneratingVector {
 public:
  static constexpr std::size_t kSize = 13;

  GeneratingVector() = default;
  /// Throws std::invalid_argument on non-finite entries.
  explicit GeneratingVector(const std::array<double, kSize>& values);
  /// Throws std::invalid_argument unless exactly 13 finite entries.
  static GeneratingVector from_span(std::span<const double> values);

  double operator[](std::size_t j) const { return v_[j]; }
  const std::array<double, kSize>& values() const { return v_; }

  /// v_j == v_{12-j} for every j, compared exactly.
  bool is_symmetric() const;

 private:
  std::array<double, kSize> v_{};
};

/// P = (v2, v6, v1, v3, v5): a point of the symmetric family with v4 = v8 = 1.
struct SlicePoint {
  double v2 = 0.0;
  double v6 = 0.0;
  double v1 = 0.0;
  double v3 = 0.0;
  double v5 = 0.0;

  std::array<double, 5> as_array() const { return {v2, v6, v1, v3, v5}; }
  static SlicePoint from_array(const std::array<double, 5>& a) {
    return {a[0], a[1], a[2], a[3], a[4]};
  }
  bool is_finite() const;
  double max_abs() const;

  friend bool operator==(const SlicePoint&, const SlicePoint&) = default;
};

/// A point x = (x1, x2, x3, x4).
struct Vec4 {
  std::array<double, 4> x{};

  double& operator[](std::size_t i) { return x[i]; }
  double operator[](std::size_t i) const { return x[i]; }

  double dot(const Vec4& o) const {
    return x[0] * o.x[0] + x[1] * o.x[1] + x[2] * o.x[2] + x[3] * o.x[3];
  }
  double norm() const;
  Vec4 scaled(double t) const { return {{t * x[0], t * x[1], t * x[2], t * x[3]}}; }
  bool is_finite() const;

  friend bool operator==(const Vec4&, const Vec4&) = default;
};

/// Multi-index a = (a1, a2, a3, a4) with a1 + a2 + a3 + a4 fixed.
using MultiIndex = std::array<int, 4>;

/// Number of degree-4 monomials in four variables.
inline constexpr std::size_t kNumQuarticMonomials = 35;
/// Number of degree-2 monomials in four variables.
inline constexpr std::size_t kNumQuadraticMonomials = 10;

/// Degree-4 multi-indices in graded lexicographic order with x1 > x2 > x3 > x4:
/// (4,0,0,0), (3,1,0,0), (3,0,1,0), ..., (0,0,0,4).
const std::array<MultiIndex, kNumQuarticMonomials>& quartic_indices();

/// Position of a degree-4 multi-index in quartic_indices(). Throws
/// std::invalid_argument if the entries are negative or do not sum to 4.
std::size_t quartic_position(const MultiIndex& a);

/// Degree-2 basis in the same order: x1^2, x1x2, x1x3, x1x4, x2^2, x2x3,
/// x2x4, x3^2, x3x4, x4^2.
const std::array<MultiIndex, kNumQuadraticMonomials>& quadratic_basis();

/// Position of the product of basis monomials i and j in quartic_indices().
std::size_t product_position(std::size_t i, std::size_t j);

/// x^a for a single monomial.
double monomial_value(const MultiIndex& a, const Vec4& x);

/// Dense coefficient form f(x) = sum_a c_a x^a over the 35 quartic monomials.
class QuarticForm {
 public:
  QuarticForm() = default;
  explicit QuarticForm(const std::array<double, kNumQuarticMonomials>& c);

  double operator[](std::size_t k) const { return c_[k]; }
  double& operator[](std::size_t k) { return c_[k]; }
  double coefficient(const MultiIndex& a) const { return c_[quartic_position(a)]; }
  const std::array<double, kNumQuarticMonomials>& coefficients() const { return c_; }

  double evaluate(const Vec4& x) const;
  double max_abs() const;
  bool is_finite() const;

  QuarticForm& operator+=(const QuarticForm& o);
  QuarticForm& operator-=(const QuarticForm& o);
  friend QuarticForm operator-(QuarticForm a, const QuarticForm& b) { return a -= b; }

 private:
  std::array<double, kNumQuarticMonomials> c_{};
};

/// (v0, v1, v2, v3, 1, v5, v6, v5, 1, v3, v2, v1, v0).
GeneratingVector assemble(const SlicePoint& p, double v0);

/// f(x) from the explicit monomial expansion.
double evaluate(const GeneratingVector& v, const Vec4& x);

/// f(x) as the literal sum over all 256 index tuples. Test reference.
double evaluate_oracle(const GeneratingVector& v, const Vec4& x);

/// Gradient of f at x.
Vec4 gradient(const GeneratingVector& v, const Vec4& x);

/// Coefficients c_a = 4!/(a1! a2! a3! a4!) * v[a2 + 2 a3 + 3 a4].
QuarticForm to_quartic(const GeneratingVector& v);

/// "a1a2a3a4" digit key used by the JSON representation.
std::string monomial_key(const MultiIndex& a);

}  // namespace hankel
