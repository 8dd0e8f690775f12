#include <gtest/gtest.h>

#include <cmath>

#include "hankel/errors.hpp"
#include "hankel/psd_bound.hpp"
#include "support.hpp"

using namespace hankel;
using hankel::testing::Rng;

namespace {

double anchor_tol(double value) { return std::max(1e-3, 5e-3 * value); }

double scale_of(const SlicePoint& p) { return 1.0 + p.max_abs(); }

}  // namespace

TEST(N0, IntegerAnchors) {
  EXPECT_NEAR(n0({1, 1, 0, 0, 0}).value, 1.0, anchor_tol(1.0));
  EXPECT_NEAR(n0({2, 1, 0, 0, 0}).value, 8.0, anchor_tol(8.0));
  EXPECT_NEAR(n0({4, 0, 0, 0, 0}).value, 441.0, anchor_tol(441.0));
}

TEST(N0, WitnessCertifiesTheBound) {
  // v0 = N0 makes f vanish at the witness, which has x1^4 + x4^4 = 1.
  const SlicePoint p{0.5, 1.0, 0.1, -0.2, 0.05};
  const auto r = n0(p);
  ASSERT_TRUE(r.converged);
  EXPECT_GT(r.starts_used, 0);
  const Vec4& x = r.witness;
  EXPECT_NEAR(std::pow(x[0], 4) + std::pow(x[3], 4), 1.0, 1e-9);
  EXPECT_NEAR(evaluate(assemble(p, r.value), x), 0.0, 1e-8 * (1 + r.value));
  EXPECT_LT(evaluate(assemble(p, r.value - 1e-3), x), 0.0);
}

TEST(N0, TheoreticalMinimumIsPsdBoundary) {
  // At v0 slightly above N0 the sphere minimum is non-negative, below it is negative.
  const SlicePoint p{1.5, 0.5, 0.0, 0.0, 0.0};
  const double v = n0(p).value;
  EXPECT_GT(minimize_on_sphere(assemble(p, v * 1.001)).value, -1e-9);
  EXPECT_LT(minimize_on_sphere(assemble(p, v * 0.99)).value, 0.0);
}

TEST(N0, OddNegationSymmetry) {
  Rng rng(41);
  for (int k = 0; k < 20; ++k) {
    const auto p = hankel::testing::random_domain_point(rng);
    const double a = n0(p).value, b = n0(hankel::testing::negated_odd(p)).value;
    EXPECT_NEAR(a, b, 1e-6 * std::max(1.0, a)) << "case " << k;
  }
}

TEST(N0, MidpointConvexity) {
  Rng rng(42);
  for (int k = 0; k < 20; ++k) {
    const auto p = hankel::testing::random_domain_point(rng);
    const auto q = hankel::testing::random_domain_point(rng);
    const SlicePoint mid{(p.v2 + q.v2) / 2, (p.v6 + q.v6) / 2, (p.v1 + q.v1) / 2, (p.v3 + q.v3) / 2,
                         (p.v5 + q.v5) / 2};
    if (!in_effective_domain(mid)) continue;  // the domain is not convex in (v5, v6)
    const double lhs = n0(mid).value;
    const double rhs = (n0(p).value + n0(q).value) / 2;
    const double scale = std::max({1.0, scale_of(p), scale_of(q)});
    EXPECT_LE(lhs, rhs + 1e-4 * scale) << "case " << k;
  }
}

TEST(N0, PositiveOnEffectiveDomain) {
  Rng rng(43);
  for (int k = 0; k < 20; ++k) EXPECT_GT(n0(hankel::testing::random_domain_point(rng)).value, 0.0);
}

TEST(N0, DeterministicForFixedSeed) {
  const SlicePoint p{-1.0, 0.5, 0.3, 0.1, -0.1};
  SearchOptions o;
  o.seed = 9;
  const auto a = n0(p, o), b = n0(p, o);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.witness.x, b.witness.x);
}

TEST(N0, RejectsPointsOutsideEffectiveDomain) {
  EXPECT_THROW(n0({5, -0.5, 0, 0, 0}), OutsideEffectiveDomain);
  EXPECT_THROW(n0({0, 0, 0, 0, 0.25}), OutsideEffectiveDomain);  // boundary eta = 1
  EXPECT_THROW(n0({NAN, 0, 0, 0, 0}), std::invalid_argument);
}

TEST(N0, BoundaryAdmittedOnRequest) {
  SearchOptions o;
  o.admit_boundary = true;
  o.n_starts = 40;
  for (double t : {-1.0, 1.0}) {
    const BoundResult r = n0({1, 1, t, t, t}, o);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, 1.0, 1e-6);
  }
  EXPECT_THROW(n0({5, -0.5, 0, 0, 0}, o), OutsideEffectiveDomain);
}

TEST(N0, RejectsInvalidOptions) {
  SearchOptions o;
  o.n_starts = 0;
  EXPECT_THROW(n0({1, 1, 0, 0, 0}, o), std::invalid_argument);
  o = {};
  o.grid_resolution = 2;
  EXPECT_THROW(n0({1, 1, 0, 0, 0}, o), std::invalid_argument);
}

TEST(Sphere, DescentAgreesWithGridOracle) {
  Rng rng(44);
  for (int k = 0; k < 10; ++k) {
    const auto v = hankel::testing::random_vector(rng);
    const double found = minimize_on_sphere(v).value;
    const double oracle = grid_oracle_min(v, 24);
    EXPECT_NEAR(found, oracle, 1e-7 * (1 + std::abs(oracle))) << "case " << k;
  }
}

TEST(Sphere, WitnessLiesOnSphereAndAttainsValue) {
  Rng rng(45);
  const auto v = hankel::testing::random_vector(rng);
  const auto r = minimize_on_sphere(v);
  EXPECT_NEAR(r.witness.norm(), 1.0, 1e-12);
  EXPECT_NEAR(evaluate(v, r.witness), r.value, 1e-12 * (1 + std::abs(r.value)));
}

TEST(Sphere, ExtraStartsAreUsed) {
  Rng rng(46);
  const auto v = hankel::testing::random_vector(rng);
  SearchOptions o;
  o.n_starts = 1;
  const std::array<Vec4, 2> extra{Vec4{{1, 0, 0, 0}}, Vec4{{0, 0, 0, 1}}};
  const auto a = minimize_on_sphere(v, o);
  const auto b = minimize_on_sphere(v, o, extra);
  EXPECT_EQ(b.starts_used, a.starts_used + 2);
  EXPECT_LE(b.value, evaluate(v, extra[0]) + 1e-12);
}

TEST(Sphere, DiagonalCornersVectorMatchesGridOracle) {
  std::array<double, 13> raw{};
  raw[0] = raw[4] = raw[8] = raw[12] = 1.0;
  const auto v = GeneratingVector(raw);
  EXPECT_NEAR(minimize_on_sphere(v).value, grid_oracle_min(v, 30), 1e-9);
}
