// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "planks/ballfinder.hpp"
#include "planks/chebmult.hpp"
#include "planks/complexproj.hpp"
#include "planks/covering.hpp"
#include "planks/sphereopt.hpp"
#include "planks/trigcircle.hpp"

#include "../support/instances.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

using namespace planks;
using planks::testing::random_unit;
using planks::testing::uniform;
using planks::testing::uniform_int;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) note << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

// Independent oracles.
double oracle_slice_distance(const AffineForm& f, const Vec& x) {
  if (std::abs(f.offset()) >= 1.0) return kInfiniteDistance;
  return std::abs(std::asin(std::clamp(f.normal().dot(x) / x.norm(), -1.0, 1.0)) - std::asin(f.offset()));
}

double oracle_plane_distance(const std::vector<AffineForm>& forms, const Vec& x) {
  double d = kInfiniteDistance;
  for (const auto& f : forms) d = std::min(d, std::abs(f.normal().dot(x) - f.offset()));
  return d;
}

double oracle_chebyshev_distance(int n, double x) {
  double d = kInfiniteDistance;
  for (int j = 1; j <= n; ++j) d = std::min(d, std::abs(x - std::cos((2.0 * j - 1.0) * kPi / (2.0 * n))));
  return d;
}

// Truncated product for G_n: the first 10^4 factors times the tail
// exp(-x^2 S2 - x^4 S4 / 2), where S_p = sum over the remaining roots of
// 1/r^p comes from the asymptotic series of the trigamma and tetragamma
// functions.
double oracle_G(int n, double x) {
  const bool even = n % 2 == 0;
  const double arg = n * kPi * x / 2.0;
  const int first = n / 2 + 1, count = 10000;
  const double shift = even ? 0.5 : 0.0;  // roots are pi (i - shift)
  double prod = 1.0;
  for (int i = first; i < first + count; ++i) {
    const double u = arg / (kPi * (i - shift));
    prod *= 1.0 - u * u;
  }
  const double L = first + count - shift;
  const double s2 = (1.0 / L + 1.0 / (2 * L * L) + 1.0 / (6 * L * L * L)) / (kPi * kPi);
  const double s4 = (1.0 / (3 * L * L * L) + 1.0 / (2 * L * L * L * L)) / std::pow(kPi, 4);
  return prod * std::exp(-arg * arg * s2 - 0.5 * std::pow(arg, 4) * s4);
}

Outcome criterion_1() {
  Outcome o;
  for (int n = 1; n <= 10; ++n) {
    const TrigPoly t = TrigPoly::cosine(n);
    o.require(std::abs(min_max_to_zero_distance(t) - kPi / (2 * n)) <= 1e-9, "distance n=" + std::to_string(n));
    const auto il = interlacing_check(t);
    o.require(il.interlaces, "interlacing n=" + std::to_string(n));
    o.require(static_cast<int>(il.arcs.size()) == 4 * n, "arc count n=" + std::to_string(n));
    for (double a : il.arcs) o.require(std::abs(a - kPi / (2 * n)) <= 1e-9, "arc length n=" + std::to_string(n));
  }
  o.note << "n = 1..10";
  return o;
}

Outcome criterion_2() {
  Outcome o;
  std::mt19937_64 rng(2002);
  int done = 0;
  double worst = kInfiniteDistance;
  while (done < 100) {
    const TrigPoly t = planks::testing::random_trig(rng, uniform_int(rng, 1, 8));
    if (trig_zeros(t).empty()) continue;
    ++done;
    const int n = t.degree();
    const double d = min_max_to_zero_distance(t);
    worst = std::min(worst, d - kPi / (2 * n));
    o.require(d >= kPi / (2 * n) - 1e-7, "distance instance " + std::to_string(done));
    o.require(max_zero_certificate(t).passed, "certificate instance " + std::to_string(done));
  }
  o.note << "100 instances, min slack " << worst;
  return o;
}

Outcome criterion_3() {
  Outcome o;
  // (1 - cos t)(0.9 + cos t) = 0.4 + 0.1 cos t - 0.5 cos 2t.
  const TrigPoly t(0.4, {{0.1, 0.0}, {-0.5, 0.0}});
  const auto zs = trig_zeros(t);
  bool double_zero = false;
  for (const auto& z : zs.zeros) {
    if (circular_distance(z.theta, 0.0) < 1e-8 && z.multiplicity == 2) double_zero = true;
  }
  o.require(double_zero, "double zero at 0");
  const double expect = std::acos(0.05);
  const auto mx = trig_max_points(t);
  bool found = false;
  for (double p : mx.points) {
    if (circular_distance(p, expect) <= 1e-8 || circular_distance(p, -expect) <= 1e-8) found = true;
  }
  o.require(found, "maximizer at arccos 0.05");
  const double d0 = circular_distance(mx.points.front(), 0.0);
  o.require(std::abs(d0 - 1.520775) < 1e-6 && d0 < kPi / 2, "distance to the double zero");
  o.note << "maximizer distance to double zero " << d0 << " < pi/2";
  return o;
}

Outcome criterion_4() {
  Outcome o;
  std::mt19937_64 rng(4004);
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 50; ++i) {
    const int d = uniform_int(rng, 2, 3), m = uniform_int(rng, 1, 6);
    const auto forms = planks::testing::random_forms(rng, d, m, 0.9);
    const auto rep = verify_sphere_distance(MultiPoly::product_of(forms), 1000 + i);
    double oracle = kInfiniteDistance;
    for (const auto& f : forms) oracle = std::min(oracle, oracle_slice_distance(f, rep.maximizer.coords()));
    o.require(std::abs(oracle - rep.distance) <= 1e-9, "oracle agreement " + std::to_string(i));
    o.require(oracle >= kPi / (2 * m) - 1e-6 && rep.passed, "bound " + std::to_string(i));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < 30.0, "runtime");
  o.note << "50 instances in " << secs << " s";
  return o;
}

Outcome criterion_5() {
  Outcome o;
  const auto rep = convergence_report(2, {20, 40, 100, 200}, 5.0);
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    o.require(rep.rows[i].cheb_error < rep.rows[i - 1].cheb_error, "monotone decrease");
  }
  o.require(rep.rows[2].cheb_error < 1e-2, "scaled T_100 error");
  o.require(rep.rows[3].product_error < 1e-3, "product error at k = 200");
  o.note << "k=100 error " << rep.rows[2].cheb_error << ", product error at 200 " << rep.rows[3].product_error;
  return o;
}

Outcome criterion_6() {
  Outcome o;
  double worst_rel = 0.0;
  for (int n = 1; n <= 20; ++n) {
    const double z = 1.0 + 1.0 / n;
    const ChebMultiplier mult(n);
    for (int j = 0; j <= 4000; ++j) {
      const double x = (z - 1e-6) * j / 4000.0;
      o.require(G_n_eval(n, x) == G_n_eval(n, -x), "evenness");
      o.require(G_n_eval(n, x) > 0.0, "no zero inside n=" + std::to_string(n));
    }
    o.require(G_n_eval(n, z - 1e-9) > 0.0 && G_n_eval(n, z + 1e-9) < 0.0, "first zero n=" + std::to_string(n));
    for (int j = 0; j <= 200; ++j) {
      const double x = (z - 1e-3) * j / 200.0;
      bool near_pole = false;
      for (double p : mult.poles) near_pole = near_pole || std::abs(x - p) < 1e-3;
      if (near_pole) continue;
      const double a = G_n_eval(n, x), b = oracle_G(n, x);
      worst_rel = std::max(worst_rel, std::abs(a - b) / std::abs(b));
    }
  }
  o.require(worst_rel <= 1e-8, "closed form vs truncated product");
  o.note << "max relative deviation " << worst_rel;
  return o;
}

Outcome criterion_7() {
  Outcome o;
  std::mt19937_64 rng(7007);
  for (int i = 0; i < 50; ++i) {
    const int d = uniform_int(rng, 2, 3), n = uniform_int(rng, 1, 5);
    const auto forms = planks::testing::random_forms(rng, d, n, 0.9);
    const auto r = multiplier_point(MultiPoly::product_of(forms), 2000 + i);
    const double oracle = oracle_plane_distance(forms, r.point.coords());
    o.require(oracle >= 1.0 / n - 1e-6, "affine instance " + std::to_string(i));
  }
  for (int n = 1; n <= 8; ++n) {
    const MultiPoly t = planks::testing::chebyshev_poly(n);
    const auto r = multiplier_point(t, 3000 + n);
    o.require(oracle_chebyshev_distance(n, r.point.coords()[0]) >= 1.0 / n - 1e-6, "Chebyshev n=" + std::to_string(n));
    const auto naive = naive_ball_maximizer(t, 3000 + n);
    const double nd = oracle_chebyshev_distance(n, naive.point.coords()[0]);
    o.require(std::abs(nd - (1.0 - std::cos(kPi / (2 * n)))) <= 1e-6, "naive distance n=" + std::to_string(n));
  }
  o.note << "50 affine products, T_1..T_8";
  return o;
}

Outcome criterion_8() {
  Outcome o;
  std::mt19937_64 rng(7007);
  for (int i = 0; i < 50; ++i) {
    const int d = uniform_int(rng, 2, 3), n = uniform_int(rng, 1, 5);
    const auto forms = planks::testing::random_forms(rng, d, n, 0.9);
    const auto c = pair_point(MultiPoly::product_of(forms), 4000 + i);
    o.require(std::abs(c.p.squaredNorm() + c.q.squaredNorm() - 1.0) <= 1e-10, "unit pair " + std::to_string(i));
    o.require(c.sphere_distance >= kPi / (4 * n) - 1e-6, "sphere distance " + std::to_string(i));
    o.require(oracle_plane_distance(forms, c.chosen) >= 1.0 / (8 * n) - 1e-6, "ball distance " + std::to_string(i));
  }
  o.note << "50 affine products";
  return o;
}

Outcome criterion_9() {
  Outcome o;
  const ComplexHomogPoly z1z2(2, {{{1, 1}, Complex(1.0)}});
  const auto r = verify_complex_distance(z1z2);
  o.require(std::abs(r.items[0].distance - kPi / 4) <= 1e-8, "z1 z2 distance");

  std::mt19937_64 rng(9009);
  for (int i = 0; i < 30; ++i) {
    const int n = uniform_int(rng, 1, 6);
    std::vector<CVec> forms;
    for (int j = 0; j < n; ++j) forms.push_back(planks::testing::random_complex_unit(rng, 2));
    const auto rep = verify_complex_distance(ComplexHomogPoly::product_of_linear(forms), 5000 + i);
    double oracle = kInfiniteDistance;
    for (const auto& c : forms) {
      oracle = std::min(oracle, std::asin(std::min(1.0, std::abs((c.array() * rep.maximizer.array()).sum()) / c.norm())));
    }
    o.require(oracle >= std::asin(1.0 / std::sqrt(n)) - 1e-6, "linear product " + std::to_string(i));
  }

  for (int n = 2; n <= 6; ++n) {
    const ComplexHomogPoly p(2, {{{1, n - 1}, Complex(1.0)}});
    CVec zero(2);
    zero << Complex(0.0), Complex(1.0);
    const auto c = cp1_radius_check(p, zero, 6000 + n);
    o.require(std::abs(c.a * c.a - 1.0 / (n - 1)) <= 1e-6, "chart radius n=" + std::to_string(n));
  }

  const WeightedSystem sys({{ComplexHomogPoly(2, {{{1, 0}, Complex(1.0)}}), 0.6},
                            {ComplexHomogPoly(2, {{{0, 1}, Complex(1.0)}}), 0.8}});
  const auto w = verify_weighted_distances(sys);
  o.require(w.items[0].distance >= std::asin(0.6) - 1e-6, "weighted form 1");
  o.require(w.items[1].distance >= std::asin(0.8) - 1e-6, "weighted form 2");
  o.note << "z1 z2 distance " << r.items[0].distance;
  return o;
}

Outcome criterion_10() {
  Outcome o;
  std::vector<SphericalSegment> zones;
  for (int i = 0; i < 3; ++i) zones.emplace_back(Vec::Unit(3, i), 0.0, 0.4);
  const auto r = refute_cover_sphere(zones);
  double worst = kInfiniteDistance;
  for (const auto& z : zones) worst = std::min(worst, oracle_slice_distance(z.core(), r.point) - z.half_width());
  o.require(worst >= std::asin(1.0 / std::sqrt(3.0)) - 0.4 - 1e-6, "orthogonal zones clearance");

  std::mt19937_64 rng(10010);
  int max_factors = 0;
  for (int i = 0; i < 20; ++i) {
    const double total = uniform(rng, 0.5, 0.95) * kPi;
    const auto segs = planks::testing::random_segments(rng, 3, uniform_int(rng, 1, 5), total, 0.8);
    const auto res = refute_cover_sphere(segs, 7000 + i);
    max_factors = std::max(max_factors, res.factors);
    o.require(res.factors <= 150, "factor count " + std::to_string(i));
    bool uncovered = true;
    for (const auto& s : segs) uncovered = uncovered && oracle_slice_distance(s.core(), res.point) > s.half_width();
    o.require(uncovered, "family " + std::to_string(i));
  }
  o.note << "clearance " << worst << ", max factors " << max_factors;
  return o;
}

Outcome criterion_11() {
  Outcome o;
  std::mt19937_64 rng(11011);
  for (int i = 0; i < 10; ++i) {
    const int d = uniform_int(rng, 2, 3);
    const auto planks = planks::testing::random_planks(rng, d, uniform_int(rng, 1, 4), uniform(rng, 0.5, 1.8), 0.8);
    const auto res = refute_cover_ball(planks, 8000 + i);
    bool ok = res.point.norm() <= 1.0 + 1e-12;
    for (const auto& p : planks) ok = ok && std::abs(p.normal().dot(res.point) - p.center()) > p.half_width();
    o.require(ok, "family " + std::to_string(i));
  }
  o.note << "10 families";
  return o;
}

Outcome criterion_12() {
  Outcome o;
  int cases = 0;
  for (int n = 1; n <= 10; ++n) {
    for (int k = n + 2; k <= 200; k += 2) {
      const auto r = lifted_diagnostics(n, k);
      ++cases;
      o.require(r.count == k - n, "count");
      o.require(r.spacing_error <= 1e-9 && std::abs(r.spacing - 2.0 / n) <= 1e-9, "spacing");
      o.require(std::abs(r.cap_radius - (1.0 + 1.0 / n)) <= 1e-9, "cap radius");
    }
  }
  o.note << cases << " (n, k) pairs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"cosine extremal distance and interlacing", criterion_1},
      {"random trigonometric max-to-zero distance", criterion_2},
      {"double-zero counterexample geometry", criterion_3},
      {"sphere maximizer far from affine-product zeros", criterion_4},
      {"scaled Chebyshev and product convergence", criterion_5},
      {"multiplier G_n structure", criterion_6},
      {"ball multiplier point", criterion_7},
      {"ball pair point", criterion_8},
      {"complex projective distances", criterion_9},
      {"spherical segment cover refutation", criterion_10},
      {"ball plank cover refutation", criterion_11},
      {"lifted sphere diagnostics", criterion_12},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2zu %s (%.2fs) %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.note.str().c_str());
    std::fflush(stdout);
    failed += o.ok ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
