#include "planks/error.hpp"
#include "planks/sphereopt.hpp"
#include "support/instances.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace planks;
using planks::testing::random_forms;
using planks::testing::random_unit;
using planks::testing::uniform;
using planks::testing::uniform_int;

namespace {

constexpr double kPi = std::numbers::pi;

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Vec e(int d, int i) { return Vec::Unit(d, i); }

MultiPoly coordinate_product(int d) {
  std::vector<Term> t{{std::vector<int>(d, 1), 1.0}};
  return MultiPoly(d, t);
}

// Minimizes the angle from p over the slice, parametrized as a circle:
// dense grid, then ternary search around the best grid point.
double brute_slice_distance(const AffineForm& f, const Vec& p) {
  Mat span(3, 1);
  span.col(0) = f.normal();
  Mat perp = orthonormal_complement(span);
  double r = std::sqrt(1 - f.offset() * f.offset());
  auto at = [&](double t) {
    Vec x = f.offset() * f.normal() + r * (std::cos(t) * perp.col(0) + std::sin(t) * perp.col(1));
    return unit_angle(p, x);
  };
  double best = kPi, bt = 0.0;
  for (int i = 0; i < 20000; ++i) {
    double t = 2 * kPi * i / 20000.0;
    if (at(t) < best) best = at(t), bt = t;
  }
  double lo = bt - 1e-3, hi = bt + 1e-3;
  for (int it = 0; it < 100; ++it) {
    double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (at(m1) < at(m2)) hi = m2; else lo = m1;
  }
  return at(lo);
}

}  // namespace

TEST(SpherePoint, Normalizes) {
  SpherePoint p(vec({3, 4}));
  EXPECT_NEAR(p.coords().norm(), 1.0, 1e-15);
  EXPECT_NEAR(p.coords()[0], 0.6, 1e-15);
}

TEST(MaximizeAbsOnSphere, LinearForm) {
  for (int d = 2; d <= 5; ++d) {
    MultiPoly p(d, {{[&] { std::vector<int> v(d, 0); v[0] = 1; return v; }(), 1.0}});
    SphereMaxResult r = maximize_abs_on_sphere(p);
    EXPECT_NEAR(r.value, 1.0, 1e-12);
    EXPECT_NEAR(std::abs(r.point.coords()[0]), 1.0, 1e-9);
  }
}

TEST(MaximizeAbsOnSphere, ProductOfTwoCoordinates) {
  SphereMaxResult r = maximize_abs_on_sphere(coordinate_product(2));
  EXPECT_NEAR(r.value, 0.5, 1e-12);
  EXPECT_TRUE(r.certified);
  ASSERT_EQ(r.all_near_max.size(), 4u);
  for (const auto& q : r.all_near_max) {
    EXPECT_NEAR(std::abs(q.coords()[0]), std::sqrt(0.5), 1e-9);
    EXPECT_NEAR(std::abs(q.coords()[1]), std::sqrt(0.5), 1e-9);
  }
}

TEST(MaximizeAbsOnSphere, ProductOfThreeCoordinates) {
  SphereMaxResult r = maximize_abs_on_sphere(coordinate_product(3));
  EXPECT_NEAR(r.value, std::pow(3.0, -1.5), 1e-10);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(r.point.coords()[i]), 1 / std::sqrt(3.0), 1e-6);
}

TEST(MaximizeAbsOnSphere, TwoDimensionsMatchesCircleMaximum) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    MultiPoly p = product_of_affine_forms(random_forms(rng, 2, uniform_int(rng, 1, 6), 0.9));
    double circle = trig_max_points(restrict_to_circle(p, CirclePlane(e(2, 0), e(2, 1)))).value;
    EXPECT_NEAR(maximize_abs_on_sphere(p).value, circle, 1e-9 * circle);
  }
}

TEST(MaximizeAbsOnSphere, DeterministicForSeed) {
  std::mt19937_64 rng(2);
  MultiPoly p = product_of_affine_forms(random_forms(rng, 4, 4, 0.5));
  SphereMaxResult a = maximize_abs_on_sphere(p, 32, 9);
  SphereMaxResult b = maximize_abs_on_sphere(p, 32, 9);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.point.coords(), b.point.coords());
}

TEST(MaximizeAbsOnSphere, NotBelowSampledMaximum) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    int d = uniform_int(rng, 3, 4);
    MultiPoly p = product_of_affine_forms(random_forms(rng, d, uniform_int(rng, 2, 5), 0.8));
    double best = 0.0;
    for (int i = 0; i < 20000; ++i) best = std::max(best, std::abs(eval(p, random_unit(rng, d))));
    EXPECT_GE(maximize_abs_on_sphere(p).value, best * (1 - 1e-12));
  }
}

TEST(MaximizeAbsOnSphere, VanishingPolynomialThrows) {
  // x1^2 + x2^2 - 1 vanishes on the circle
  MultiPoly p(2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}, {{0, 0}, -1.0}});
  EXPECT_THROW(maximize_abs_on_sphere(p), NumericalError);
}

TEST(SliceDistance, Examples) {
  AffineForm eq(e(3, 0), 0.0);
  EXPECT_NEAR(slice_distance(eq, SpherePoint(e(3, 0))), kPi / 2, 1e-15);
  AffineForm half(e(3, 0), 0.5);
  SpherePoint on(vec({0.5, std::sqrt(0.75), 0.0}));
  EXPECT_NEAR(slice_distance(half, on), 0.0, 1e-15);
  EXPECT_EQ(slice_distance(AffineForm(e(3, 0), 1.0), on), kInfiniteDistance);
}

TEST(SliceDistance, MatchesBruteForce) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    AffineForm f(random_unit(rng, 3), uniform(rng, -0.9, 0.9));
    SpherePoint p(random_unit(rng, 3));
    EXPECT_NEAR(slice_distance(f, p), brute_slice_distance(f, p.coords()), 1e-8);
    Vec q = nearest_slice_point(f, p);
    EXPECT_NEAR(f(q), 0.0, 1e-12);
    EXPECT_NEAR(q.norm(), 1.0, 1e-12);
    EXPECT_NEAR(unit_angle(p.coords(), q), slice_distance(f, p), 1e-10);
  }
}

TEST(SliceDistance, ZeroExactlyOnSlice) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    AffineForm f(random_unit(rng, 4), uniform(rng, -0.9, 0.9));
    SpherePoint on(nearest_slice_point(f, SpherePoint(random_unit(rng, 4))));
    EXPECT_LT(slice_distance(f, on), 1e-9);
    SpherePoint off(on.coords() + 1e-3 * f.normal());
    EXPECT_GT(slice_distance(f, off), 1e-9);
  }
}

TEST(AngularDistanceToZeroSet, Examples) {
  ZeroDistance a = angular_distance_to_zero_set(coordinate_product(2), SpherePoint(vec({1, 1})));
  EXPECT_NEAR(a.distance, kPi / 4, 1e-10);
  ASSERT_TRUE(a.witness.has_value());
  EXPECT_NEAR(std::abs((*a.witness)[0] * (*a.witness)[1]), 0.0, 1e-10);

  ZeroDistance b = angular_distance_to_zero_set(coordinate_product(3), SpherePoint(vec({1, 1, 1})));
  EXPECT_NEAR(b.distance, std::asin(1 / std::sqrt(3.0)), 1e-8);

  MultiPoly pos(2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}});
  EXPECT_EQ(angular_distance_to_zero_set(pos, SpherePoint(vec({1, 0}))).distance, kInfiniteDistance);
}

TEST(AngularDistanceToZeroSet, UntaggedAgreesWithClosedForm) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 15; ++trial) {
    int d = uniform_int(rng, 2, 3);
    auto forms = random_forms(rng, d, uniform_int(rng, 1, 4), 0.7);
    MultiPoly tagged = product_of_affine_forms(forms);
    MultiPoly plain(d, tagged.terms());
    SpherePoint p(random_unit(rng, d));
    double exact = angular_distance_to_zero_set(tagged, p).distance;
    double est = angular_distance_to_zero_set(plain, p, 128).distance;
    EXPECT_GE(est, exact - 1e-9);
    EXPECT_NEAR(est, exact, 1e-6) << "trial " << trial;
  }
}

TEST(AngularDistanceToZeroSet, MonotoneInBudget) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    MultiPoly p(3, product_of_affine_forms(random_forms(rng, 3, 3, 0.6)).terms());
    SpherePoint x(random_unit(rng, 3));
    double prev = kInfiniteDistance;
    for (int budget : {4, 8, 16, 32, 64}) {
      double cur = angular_distance_to_zero_set(p, x, budget).distance;
      EXPECT_LE(cur, prev);
      prev = cur;
    }
  }
}

TEST(VerifySphereDistance, EquallySpacedSlicesHitTheBound) {
  for (int n = 1; n <= 6; ++n) {
    std::vector<AffineForm> forms;
    for (int j = 0; j < n; ++j) {
      double a = kPi * j / n + 0.2;
      forms.emplace_back(vec({std::cos(a), std::sin(a)}), 0.0);
    }
    SphereDistanceReport r = verify_sphere_distance(product_of_affine_forms(forms));
    EXPECT_TRUE(r.passed);
    EXPECT_NEAR(r.distance, kPi / (2 * n), 1e-9);
    ASSERT_TRUE(r.equality_circle.has_value());
    ASSERT_TRUE(r.interlacing.has_value());
    EXPECT_TRUE(r.interlacing->interlaces);
  }
}

TEST(VerifySphereDistance, CoordinateProducts) {
  SphereDistanceReport two = verify_sphere_distance(coordinate_product(2));
  EXPECT_TRUE(two.passed);
  EXPECT_NEAR(two.distance, kPi / 4, 1e-9);
  ASSERT_TRUE(two.interlacing.has_value());
  EXPECT_TRUE(two.interlacing->interlaces);

  SphereDistanceReport three = verify_sphere_distance(coordinate_product(3));
  EXPECT_TRUE(three.passed);
  EXPECT_NEAR(three.distance, std::asin(1 / std::sqrt(3.0)), 1e-6);
  EXPECT_NEAR(three.bound, kPi / 6, 1e-15);
  EXPECT_FALSE(three.equality_circle.has_value());
}

TEST(VerifySphereDistance, EmptyZeroSetPasses) {
  MultiPoly pos(3, {{{2, 0, 0}, 1.0}, {{0, 2, 0}, 1.0}, {{0, 0, 2}, 2.0}});
  SphereDistanceReport r = verify_sphere_distance(pos);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.distance, kInfiniteDistance);
}

TEST(VerifySphereDistance, RandomAffineProducts) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    int d = uniform_int(rng, 2, 3), m = uniform_int(rng, 1, 6);
    MultiPoly p = product_of_affine_forms(random_forms(rng, d, m, 0.9));
    SphereDistanceReport r = verify_sphere_distance(p, trial);
    EXPECT_TRUE(r.passed) << "trial " << trial;
    EXPECT_GE(r.distance, kPi / (2 * m) - 1e-6);
    double oracle = kInfiniteDistance;
    for (const auto& f : p.factors()) oracle = std::min(oracle, slice_distance(f, r.maximizer));
    EXPECT_NEAR(r.distance, oracle, 1e-12);
  }
}
