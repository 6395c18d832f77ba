#include "planks/complexproj.hpp"
#include "planks/error.hpp"
#include "support/instances.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace planks;
using planks::testing::random_complex_unit;
using planks::testing::uniform;
using planks::testing::uniform_int;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex I(0.0, 1.0);

CVec cvec(std::initializer_list<Complex> xs) {
  CVec v(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (Complex x : xs) v[i++] = x;
  return v;
}

ComplexHomogPoly monomial(std::vector<int> e) {
  int d = static_cast<int>(e.size());
  return ComplexHomogPoly(d, {{std::move(e), Complex(1.0)}});
}

ComplexHomogPoly random_linear_product(std::mt19937_64& rng, int d, int n) {
  std::vector<CVec> forms;
  for (int i = 0; i < n; ++i) forms.push_back(random_complex_unit(rng, d));
  return ComplexHomogPoly::product_of_linear(forms);
}

ComplexHomogPoly random_homog(std::mt19937_64& rng, int d, int n, int nterms) {
  std::normal_distribution<double> g;
  std::vector<ComplexTerm> terms;
  for (int t = 0; t < nterms; ++t) {
    std::vector<int> e(d, 0);
    for (int k = 0; k < n; ++k) ++e[uniform_int(rng, 0, d - 1)];
    terms.push_back({e, Complex(g(rng), g(rng))});
  }
  return ComplexHomogPoly(d, terms);
}

// Bilinear value of a linear form, sum c_j z_j.
Complex form_value(const CVec& c, const CVec& z) { return (c.array() * z.array()).sum(); }

}  // namespace

TEST(CplxEval, Examples) {
  ComplexHomogPoly p = monomial({1, 1});
  Complex v = cplx_eval(p, cvec({1.0, I}));
  EXPECT_NEAR(std::abs(v - I), 0.0, 1e-15);
  ComplexHomogPoly sq = monomial({2, 0});
  Complex w = cplx_eval(sq, cvec({std::polar(1.0, kPi / 3), 0.0}));
  EXPECT_NEAR(std::abs(w - std::polar(1.0, 2 * kPi / 3)), 0.0, 1e-15);
}

TEST(CplxEval, Homogeneity) {
  std::mt19937_64 rng(1);
  Complex lambda(0.7, 0.2);
  for (int trial = 0; trial < 20; ++trial) {
    ComplexHomogPoly p = random_homog(rng, uniform_int(rng, 1, 4), 3, 5);
    CVec z = random_complex_unit(rng, p.dim());
    Complex a = cplx_eval(p, CVec(lambda * z)), b = std::pow(lambda, 3) * cplx_eval(p, z);
    EXPECT_LT(std::abs(a - b), 1e-10 * std::max(1e-3, std::abs(b)));
  }
}

TEST(ComplexHomogPoly, ValidatesInput) {
  EXPECT_THROW(ComplexHomogPoly(2, {{{1, 0}, 1.0}, {{1, 1}, 1.0}}), InputError);
  EXPECT_THROW(ComplexHomogPoly(2, {{{1, 0}, 0.0}}), InputError);
  EXPECT_THROW(ComplexHomogPoly(2, {{{-1, 2}, 1.0}}), InputError);
  EXPECT_THROW(ComplexHomogPoly(2, {{{1, 0, 0}, 1.0}}), InputError);
  ComplexHomogPoly p = monomial({1, 1});
  EXPECT_THROW(cplx_eval(p, cvec({1.0})), InputError);
}

TEST(ComplexHomogPoly, LinearProductExpandsConsistently) {
  std::mt19937_64 rng(2);
  std::vector<CVec> forms;
  for (int i = 0; i < 3; ++i) forms.push_back(random_complex_unit(rng, 3));
  ComplexHomogPoly p = ComplexHomogPoly::product_of_linear(forms);
  ComplexHomogPoly plain(3, p.terms());
  EXPECT_EQ(p.degree(), 3);
  for (int i = 0; i < 20; ++i) {
    CVec z = random_complex_unit(rng, 3);
    Complex want = 1.0;
    for (const auto& c : forms) want *= form_value(c, z);
    EXPECT_LT(std::abs(p.eval(z) - want), 1e-12);
    EXPECT_LT(std::abs(plain.eval(z) - want), 1e-12);
  }
}

TEST(ComplexHomogPoly, GradientMatchesFiniteDifference) {
  std::mt19937_64 rng(3);
  ComplexHomogPoly p = random_homog(rng, 3, 4, 6);
  CVec z = random_complex_unit(rng, 3);
  CVec g = p.gradient(z);
  for (int j = 0; j < 3; ++j) {
    double h = 1e-6;
    CVec zp = z, zm = z;
    zp[j] += h;
    zm[j] -= h;
    Complex fd = (p.eval(zp) - p.eval(zm)) / (2 * h);
    EXPECT_LT(std::abs(g[j] - fd), 1e-7);
  }
}

TEST(RealLayout, RoundTrip) {
  CVec z = cvec({Complex(1, 2), Complex(3, 4)});
  Vec x = to_real(z);
  ASSERT_EQ(x.size(), 4);
  EXPECT_EQ(x[0], 1);
  EXPECT_EQ(x[1], 3);
  EXPECT_EQ(x[2], 2);
  EXPECT_EQ(x[3], 4);
  EXPECT_EQ(to_complex(x), z);
}

TEST(HermitianDistance, EqualsMinimumOverTheUnitCircleOrbit) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    int d = uniform_int(rng, 1, 4);
    CVec p = random_complex_unit(rng, d), z = random_complex_unit(rng, d);
    auto angle = [&](double phi) { return unit_angle(to_real(p), to_real(CVec(std::polar(1.0, phi) * z))); };
    double best = kPi, at = 0.0;
    for (int i = 0; i < 4000; ++i) {
      double phi = 2 * kPi * i / 4000.0;
      if (angle(phi) < best) best = angle(phi), at = phi;
    }
    double lo = at - 2e-3, hi = at + 2e-3;
    for (int it = 0; it < 100; ++it) {
      double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
      if (angle(m1) < angle(m2)) hi = m2; else lo = m1;
    }
    EXPECT_NEAR(hermitian_distance(p, z), angle(lo), 1e-7);
  }
}

TEST(HermitianDistance, AccurateNearZero) {
  CVec p = cvec({1.0, 0.0});
  CVec z = cvec({1.0, Complex(1e-10, 0)}).normalized();
  EXPECT_NEAR(hermitian_distance(p, z), 1e-10, 1e-18);
}

TEST(WeightedSystem, BudgetValidation) {
  EXPECT_NO_THROW(WeightedSystem({{monomial({1, 0}), 0.6}, {monomial({0, 1}), 0.8}}));
  EXPECT_THROW(WeightedSystem({{monomial({1, 0}), 0.8}, {monomial({0, 1}), 0.8}}), InputError);
  EXPECT_THROW(WeightedSystem({{monomial({1, 1}), 0.8}}), InputError);
  EXPECT_THROW(WeightedSystem({}), InputError);
  EXPECT_THROW(WeightedSystem({{monomial({1, 0}), 0.5}, {monomial({0, 1, 0}), 0.5}}), InputError);
}

TEST(MaximizeWeightedLog, Examples) {
  WeightedMaxResult one = maximize_weighted_log(WeightedSystem({{monomial({1, 0, 0}), 1.0}}));
  EXPECT_NEAR(one.value, 0.0, 1e-12);
  EXPECT_NEAR(std::abs(one.point[0]), 1.0, 1e-9);

  WeightedMaxResult prod = maximize_weighted_log(WeightedSystem({{monomial({1, 1}), 0.5}}));
  EXPECT_NEAR(std::abs(prod.point[0]), std::sqrt(0.5), 1e-7);
  EXPECT_NEAR(std::abs(prod.point[1]), std::sqrt(0.5), 1e-7);
  EXPECT_NEAR(prod.value, 0.25 * std::log(0.5), 1e-12);

  for (auto [d1, d2] : {std::pair{0.6, 0.8}, std::pair{0.3, 0.5}}) {
    WeightedMaxResult r = maximize_weighted_log(WeightedSystem({{monomial({1, 0}), d1}, {monomial({0, 1}), d2}}));
    EXPECT_NEAR(std::norm(r.point[0]), d1 * d1 / (d1 * d1 + d2 * d2), 1e-7);
  }
}

TEST(ComplexZeroDistance, Examples) {
  EXPECT_NEAR(complex_zero_distance(monomial({1, 0}), cvec({1.0, 0.0})).distance, kPi / 2, 1e-12);
  CVec mid = cvec({std::sqrt(0.5), std::sqrt(0.5)});
  EXPECT_NEAR(complex_zero_distance(monomial({1, 1}), mid).distance, kPi / 4, 1e-12);
  EXPECT_NEAR(complex_zero_distance(monomial({4, 0}), cvec({0.0, 1.0})).distance, 0.0, 1e-12);
}

TEST(ComplexZeroDistance, UntaggedAgreesWithLinearFactors) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    int d = uniform_int(rng, 2, 3);
    ComplexHomogPoly tagged = random_linear_product(rng, d, uniform_int(rng, 1, 4));
    ComplexHomogPoly plain(d, tagged.terms());
    CVec p = random_complex_unit(rng, d);
    double exact = complex_zero_distance(tagged, p).distance;
    double est = complex_zero_distance(plain, p, 128).distance;
    EXPECT_GE(est, exact - 1e-8);
    EXPECT_NEAR(est, exact, 1e-6) << "trial " << trial << " d " << d;
  }
}

TEST(ComplexZeroDistance, WitnessIsAUnitZero) {
  std::mt19937_64 rng(6);
  ComplexHomogPoly p = random_homog(rng, 2, 3, 4);
  CVec x = random_complex_unit(rng, 2);
  ComplexZeroDistance r = complex_zero_distance(p, x);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_NEAR(r.witness->norm(), 1.0, 1e-12);
  EXPECT_LT(std::abs(p.eval(*r.witness)), 1e-9 * p.coeff_norm());
  EXPECT_NEAR(hermitian_distance(x, *r.witness), r.distance, 1e-12);
}

TEST(ComplexZeroDistance, InvariantUnderUnitScalars) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexHomogPoly p = random_homog(rng, 2, 3, 4);
    CVec x = random_complex_unit(rng, 2);
    Complex u = std::polar(1.0, uniform(rng, 0, 2 * kPi));
    EXPECT_NEAR(complex_zero_distance(p, x).distance, complex_zero_distance(p, CVec(u * x)).distance, 1e-10);
    EXPECT_NEAR(std::abs(p.eval(x)), std::abs(p.eval(CVec(u * x))), 1e-12);
  }
}

TEST(VerifyComplexDistance, Examples) {
  ComplexReport two = verify_complex_distance(monomial({1, 1}));
  EXPECT_TRUE(two.passed);
  ASSERT_EQ(two.items.size(), 1u);
  EXPECT_NEAR(two.items[0].distance, kPi / 4, 1e-8);
  EXPECT_NEAR(two.items[0].bound, std::asin(std::sqrt(0.5)), 1e-15);
  ASSERT_TRUE(two.cp1_radius.has_value());
  EXPECT_NEAR(*two.cp1_radius, 1.0, 1e-7);

  ComplexReport one = verify_complex_distance(monomial({1, 0}));
  EXPECT_TRUE(one.passed);
  EXPECT_NEAR(one.items[0].distance, kPi / 2, 1e-8);
}

TEST(VerifyComplexDistance, RandomLinearProducts) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    int d = uniform_int(rng, 2, 3), n = uniform_int(rng, 1, 6);
    ComplexHomogPoly p = random_linear_product(rng, d, n);
    ComplexReport r = verify_complex_distance(p, trial);
    EXPECT_TRUE(r.passed) << "trial " << trial;
    EXPECT_GE(r.items[0].distance, std::asin(1 / std::sqrt(double(n))) - 1e-6);
    double oracle = kInfiniteDistance;
    for (const auto& c : p.linear_factors())
      oracle = std::min(oracle, std::asin(std::min(1.0, std::abs(form_value(c, r.maximizer)) / c.norm())));
    EXPECT_NEAR(r.items[0].distance, oracle, 1e-9);
  }
}

TEST(VerifyComplexDistance, BalancedMonomialsHitTheBound) {
  for (int n = 2; n <= 6; ++n) {
    for (int k = 1; k < n; ++k) {
      ComplexReport r = verify_complex_distance(monomial({k, n - k}));
      EXPECT_TRUE(r.passed);
      double expect = std::asin(std::sqrt(std::min(k, n - k) / double(n)));
      EXPECT_NEAR(r.items[0].distance, expect, 1e-7) << n << " " << k;
    }
  }
}

TEST(Cp1RadiusCheck, Examples) {
  for (int n = 2; n <= 6; ++n) {
    Cp1RadiusResult r = cp1_radius_check(monomial({1, n - 1}), cvec({0.0, 1.0}));
    EXPECT_TRUE(r.passed);
    EXPECT_NEAR(r.a * r.a, 1.0 / (n - 1), 1e-6) << n;
    EXPECT_NEAR(r.bound, 1.0 / (n - 1), 1e-15);
  }
  Cp1RadiusResult sq = cp1_radius_check(monomial({2, 2}), cvec({0.0, 1.0}));
  EXPECT_TRUE(sq.passed);
  EXPECT_NEAR(sq.a, 1.0, 1e-6);
  Cp1RadiusResult two = cp1_radius_check(monomial({1, 1}), cvec({0.0, 1.0}));
  EXPECT_NEAR(two.a, 1.0, 1e-6);
}

TEST(Cp1RadiusCheck, Preconditions) {
  EXPECT_THROW(cp1_radius_check(monomial({1, 1}), cvec({1.0, 1.0}).normalized()), InputError);
  EXPECT_THROW(cp1_radius_check(monomial({1, 0}), cvec({0.0, 1.0})), InputError);
  EXPECT_THROW(cp1_radius_check(monomial({1, 1, 0}), cvec({0.0, 1.0, 0.0})), InputError);
}

TEST(Cp1RadiusCheck, RandomProductsRespectBound) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    int n = uniform_int(rng, 2, 5);
    std::vector<CVec> forms;
    for (int i = 0; i < n; ++i) forms.push_back(random_complex_unit(rng, 2));
    ComplexHomogPoly p = ComplexHomogPoly::product_of_linear(forms);
    // the zero of the first form: c . z = 0 at z = (c2, -c1)
    CVec zero = cvec({forms[0][1], -forms[0][0]}).normalized();
    Cp1RadiusResult r = cp1_radius_check(p, zero, trial);
    EXPECT_TRUE(r.passed) << trial;
    EXPECT_GE(r.a * r.a, 1.0 / (n - 1) - 1e-8);
  }
}

TEST(VerifyWeightedDistances, Examples) {
  ComplexReport single = verify_weighted_distances(WeightedSystem({{monomial({1, 0}), 1.0}}));
  EXPECT_TRUE(single.passed);
  EXPECT_NEAR(single.items[0].distance, kPi / 2, 1e-8);

  double h = std::sqrt(0.5);
  ComplexReport even = verify_weighted_distances(WeightedSystem({{monomial({1, 0}), h}, {monomial({0, 1}), h}}));
  EXPECT_TRUE(even.passed);
  for (const auto& it : even.items) EXPECT_NEAR(it.distance, kPi / 4, 1e-7);

  ComplexReport uneven = verify_weighted_distances(WeightedSystem({{monomial({1, 0}), 0.6}, {monomial({0, 1}), 0.8}}));
  EXPECT_TRUE(uneven.passed);
  EXPECT_GE(uneven.items[0].distance, std::asin(0.6) - 1e-6);
  EXPECT_GE(uneven.items[1].distance, std::asin(0.8) - 1e-6);
  for (const auto& it : uneven.items) EXPECT_NEAR(it.euclidean_distance, std::sin(it.distance), 1e-15);
}

TEST(VerifyWeightedDistances, ScalingWeightsDownKeepsPassing) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 5; ++trial) {
    ComplexHomogPoly a = random_linear_product(rng, 2, 2), b = random_linear_product(rng, 2, 1);
    for (double c : {1.0, 0.7, 0.3}) {
      double d1 = c * 0.5, d2 = c * std::sqrt(0.5);
      ComplexReport r = verify_weighted_distances(WeightedSystem({{a, d1}, {b, d2}}), trial);
      EXPECT_TRUE(r.passed) << trial << " " << c;
    }
  }
}
