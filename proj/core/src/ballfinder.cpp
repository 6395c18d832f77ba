#include "planks/ballfinder.hpp"

#include "planks/chebmult.hpp"
#include "planks/error.hpp"
#include "planks/optim.hpp"
#include "planks/roots.hpp"
#include "planks/sphereopt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace planks {

namespace {

constexpr std::uint64_t kLineSeed = 0xba11'5eed'0001ULL;
constexpr std::size_t kMaxCandidates = 32;

std::optional<Vec> project_to_zero_set(const MultiPoly& poly, Vec y) {
  for (int it = 0; it < 30; ++it) {
    const double v = poly.eval(y);
    const Vec g = poly.gradient(y);
    const double gn2 = g.squaredNorm();
    if (!(gn2 > 0.0)) return std::nullopt;
    if (std::abs(v) <= 1e-14 * std::sqrt(gn2) * std::max(1.0, y.norm())) return y;
    y -= (v / gn2) * g;
  }
  const Vec g = poly.gradient(y);
  if (std::abs(poly.eval(y)) <= 1e-10 * g.norm() * std::max(1.0, y.norm())) return y;
  return std::nullopt;
}

Vec descend_toward(const MultiPoly& poly, const Vec& p, Vec z) {
  double alpha = 0.5;
  for (int it = 0; it < 200; ++it) {
    const Vec g = poly.gradient(z);
    if (!(g.norm() > 0.0)) break;
    const Vec gh = g.normalized();
    Vec step = p - z;
    step -= step.dot(gh) * gh;
    if (step.norm() < 1e-13) break;
    bool moved = false;
    for (int bt = 0; bt < 30; ++bt, alpha *= 0.5) {
      const auto y = project_to_zero_set(poly, z + alpha * step);
      if (y && (*y - p).norm() < (z - p).norm() - 1e-16) {
        z = *y;
        moved = true;
        alpha = std::min(1.0, 2.0 * alpha);
        break;
      }
    }
    if (!moved) break;
  }
  return z;
}

// Zeros of P along p + t dir, nearest first.
EuclideanZeroDistance line_distance(const MultiPoly& poly, const Vec& p, const Vec& dir) {
  EuclideanZeroDistance out;
  const UniPoly c = restrict_to_line(poly, p, dir);
  for (double t : real_roots(c)) {
    if (std::abs(t) < out.distance) {
      out.distance = std::abs(t);
      out.witness = Vec(p + t * dir);
    }
  }
  return out;
}

std::vector<AscentResult> ball_local_maxima(const MultiPoly& poly, std::uint64_t seed, int starts,
                                           bool use_multiplier) {
  const int n = poly.degree();
  if (n < 1) throw InputError("polynomial must have degree at least 1");
  if (starts < 1) throw InputError("need at least one start");
  const double kappa = G_n_log_curvature_at_zero(n);
  const Objective obj{
      [&](const Vec& x) {
        double v = poly.log_abs(x);
        if (use_multiplier) v += std::log(std::abs(G_n_eval(n, x.norm())));
        return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
      },
      [&](const Vec& x) {
        Vec g = poly.log_abs_gradient(x);
        if (use_multiplier) {
          const double r = x.norm();
          g += (r > 1e-8 ? G_n_log_derivative(n, r) / r : kappa) * x;
        }
        return g;
      }};
  return multi_ascend(obj, ball_starts(poly.dim(), starts, seed), Domain::kBall);
}

MultiplierResult ball_maximize(const MultiPoly& poly, std::uint64_t seed, int starts, double tol,
                               bool use_multiplier, bool prefer_far) {
  const int n = poly.degree();
  auto near = near_maximizers(ball_local_maxima(poly, seed, starts, use_multiplier));
  if (near.empty()) throw NumericalError("no point with a nonzero value was found");
  if (near.size() > kMaxCandidates) near.resize(kMaxCandidates);

  std::vector<EuclideanZeroDistance> dists(near.size());
  for (std::size_t i = 0; i < near.size(); ++i) {
    Vec x = near[i].point;
    if (x.norm() > 1.0) x.normalize();
    near[i].point = x;
    dists[i] = euclidean_zero_distance(poly, BallPoint(x));
  }
  std::size_t pick = 0;
  for (std::size_t i = 1; i < near.size(); ++i) {
    const bool better = prefer_far ? dists[i].distance > dists[pick].distance
                                   : dists[i].distance < dists[pick].distance;
    if (better) pick = i;
  }
  MultiplierResult r{BallPoint(near[pick].point), near[pick].value, dists[pick].distance, 1.0 / n, false,
                     dists[pick].witness, {}};
  r.passed = r.distance >= r.bound - tol;
  for (std::size_t i = 0; i < near.size(); ++i) r.candidates.push_back({near[i].point, dists[i].distance});
  return r;
}

}  // namespace

BallPoint::BallPoint(Vec coords) : coords_(std::move(coords)) {
  if (coords_.size() < 1 || !coords_.allFinite()) throw InputError("ball point must be a finite vector");
  if (coords_.norm() > 1.0 + 1e-12) throw InputError("point lies outside the unit ball");
}

EuclideanZeroDistance euclidean_zero_distance(const MultiPoly& poly, const BallPoint& pt, int budget) {
  const int d = poly.dim();
  if (pt.dim() != d) throw InputError("point and polynomial differ in dimension");
  const Vec& p = pt.coords();

  if (poly.is_affine_product()) {
    EuclideanZeroDistance out;
    for (const auto& f : poly.factors()) {
      const double v = f(p);
      if (std::abs(v) < out.distance) {
        out.distance = std::abs(v);
        out.witness = Vec(p - v * f.normal());
      }
    }
    return out;
  }
  if (poly.eval(p) == 0.0) return {0.0, p};
  if (d == 1) return line_distance(poly, p, Vec::Constant(1, 1.0));

  const auto dirs = sphere_starts(d, std::max(1, budget), kLineSeed);
  std::vector<EuclideanZeroDistance> found(dirs.size());
  parallel_for(static_cast<int>(dirs.size()), [&](int i) {
    auto z = line_distance(poly, p, dirs[i]);
    if (z.witness) {
      if (auto y = project_to_zero_set(poly, *z.witness)) {
        const Vec refined = descend_toward(poly, p, *y);
        const double dr = (refined - p).norm();
        if (dr < z.distance) z = {dr, refined};
      }
    }
    found[i] = std::move(z);
  });
  EuclideanZeroDistance best;
  for (auto& z : found) {
    if (z.distance < best.distance) best = std::move(z);
  }
  return best;
}

PairCertificate pair_point(const MultiPoly& poly, std::uint64_t seed, int starts, double tol) {
  const int n = poly.degree();
  const int d = poly.dim();
  if (n < 1) throw InputError("polynomial must have degree at least 1");
  const MultiPoly doubled = poly.doubled();
  const auto mx = maximize_abs_on_sphere(doubled, starts, seed);

  std::optional<PairCertificate> best;
  for (const auto& cand : mx.all_near_max) {
    PairCertificate c;
    c.p = cand.coords().head(d);
    c.q = cand.coords().tail(d);
    if (c.p.norm() > c.q.norm()) {
      std::swap(c.p, c.q);
      c.swapped = true;
    }
    c.chosen = c.p;
    c.sphere_distance = angular_distance_to_zero_set(doubled, cand).distance;
    c.sphere_bound = std::numbers::pi / (4.0 * n);
    c.chord_bound = 2.0 * std::sin(std::numbers::pi / (8.0 * n));
    const auto zd = euclidean_zero_distance(poly, BallPoint(c.chosen));
    c.ball_distance = zd.distance;
    c.bound = 1.0 / (8.0 * n);
    c.passed = c.ball_distance >= c.bound - tol && c.sphere_distance >= c.sphere_bound - tol;
    c.nearest_zero = zd.witness;
    c.lift_gap_bound = (std::numbers::sqrt2 - 1.0) / (2.0 * std::numbers::sqrt2 * n);
    if (zd.witness && zd.witness->norm() <= 1.0 && c.q.norm() > 0.0) {
      c.lift_t = std::sqrt((1.0 - zd.witness->squaredNorm()) / c.q.squaredNorm());
      c.lift_bound_applies = (*zd.witness - c.p).norm() < c.bound;
    }
    if (!best || c.ball_distance > best->ball_distance) best = std::move(c);
  }
  return *best;
}

std::vector<AscentResult> multiplier_local_maxima(const MultiPoly& poly, std::uint64_t seed, int starts) {
  return ball_local_maxima(poly, seed, starts, true);
}

MultiplierResult multiplier_point(const MultiPoly& poly, std::uint64_t seed, int starts, double tol) {
  return ball_maximize(poly, seed, starts, tol, true, true);
}

MultiplierResult naive_ball_maximizer(const MultiPoly& poly, std::uint64_t seed, int starts) {
  return ball_maximize(poly, seed, starts, 0.0, false, false);
}

LiftedDiagnostics lifted_diagnostics(int n, int k) {
  if (n < 1 || k <= n || (k - n) % 2 != 0) throw InputError("need 1 <= n < k with k = n (mod 2)");
  constexpr double pi = std::numbers::pi;
  LiftedDiagnostics r;
  r.n = n;
  r.k = k;
  r.r_k = 2.0 * k / (n * pi);
  double alpha_max = 0.0;
  for (int i = n / 2 + 1; i <= k / 2; ++i) {
    // t_{i,k} = cos(alpha): alpha is the angle of the hyperplane above the equator.
    const double alpha = pi / (2.0 * k) + (k / 2 - i) * pi / k;
    const double t = std::cos(alpha);
    const double h = r.r_k * std::sqrt(1.0 - t * t);
    r.latitudes.push_back(h);
    r.latitudes.push_back(-h);
    r.spherical_heights.push_back(r.r_k * alpha);
    r.spherical_heights.push_back(-r.r_k * alpha);
    alpha_max = std::max(alpha_max, alpha);
  }
  std::sort(r.latitudes.begin(), r.latitudes.end());
  std::sort(r.spherical_heights.begin(), r.spherical_heights.end());
  r.count = static_cast<int>(r.latitudes.size());
  const double target = 2.0 / n;
  for (std::size_t i = 1; i < r.spherical_heights.size(); ++i) {
    const double gap = r.spherical_heights[i] - r.spherical_heights[i - 1];
    if (i == 1) r.spacing = gap;
    r.spacing_error = std::max(r.spacing_error, std::abs(gap - target));
  }
  r.cap_radius = r.r_k * (pi / 2.0 - alpha_max);
  r.count_ok = r.count == k - n;
  r.spacing_ok = r.spacing_error <= 1e-9;
  r.cap_ok = std::abs(r.cap_radius - (1.0 + 1.0 / n)) <= 1e-9;
  return r;
}

}  // namespace planks
