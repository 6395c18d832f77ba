#include "planks/sphereopt.hpp"

#include "planks/error.hpp"
#include "planks/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace planks {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kDistanceSeed = 0x5eed'd157'a9ceULL;

// Newton projection of y onto Z(P) within the unit sphere.
std::optional<Vec> project_to_zero_set(const MultiPoly& poly, Vec y) {
  for (int it = 0; it < 30; ++it) {
    y.normalize();
    const double v = poly.eval(y);
    const Vec g = poly.gradient(y);
    const Vec gt = g - y.dot(g) * y;
    const double gn2 = gt.squaredNorm();
    if (!(gn2 > 0.0)) return std::nullopt;
    if (std::abs(v) <= 1e-14 * std::sqrt(gn2)) return y;
    y -= (v / gn2) * gt;
  }
  y.normalize();
  const Vec g = poly.gradient(y);
  const double gn = (g - y.dot(g) * y).norm();
  if (gn > 0.0 && std::abs(poly.eval(y)) <= 1e-10 * gn) return y;
  return std::nullopt;
}

// Moves a zero z of P along Z(P) toward p while the angle to p decreases.
Vec descend_toward(const MultiPoly& poly, const Vec& p, Vec z) {
  const auto d = p.size();
  double alpha = 0.5;
  for (int it = 0; it < 200; ++it) {
    Mat span(d, 2);
    span.col(0) = z;
    span.col(1) = poly.gradient(z);
    Eigen::HouseholderQR<Mat> qr(span);
    const Mat q = qr.householderQ() * Mat::Identity(d, 2);
    const Vec step = p - q * (q.transpose() * p);
    if (step.norm() < 1e-13) break;
    bool moved = false;
    for (int bt = 0; bt < 30; ++bt, alpha *= 0.5) {
      const auto y = project_to_zero_set(poly, z + alpha * step);
      if (y && p.dot(*y) > p.dot(z) + 1e-16) {
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

ZeroDistance circle_distance(const MultiPoly& poly, const CirclePlane& plane) {
  ZeroDistance out;
  const TrigPoly t = restrict_to_circle(poly, plane);
  if (t.is_zero()) {
    out.distance = 0.0;
    out.witness = plane.at(0.0);
    return out;
  }
  for (const auto& z : trig_zeros(t).zeros) {
    const double d = circular_distance(z.theta, 0.0);
    if (d < out.distance) {
      out.distance = d;
      out.witness = plane.at(z.theta);
    }
  }
  return out;
}

}  // namespace

SpherePoint::SpherePoint(Vec coords) : coords_(std::move(coords)) {
  const double n = coords_.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InputError("sphere point must be a nonzero finite vector");
  coords_ /= n;
}

SphereMaxResult maximize_abs_on_sphere(const MultiPoly& poly, int starts, std::uint64_t seed) {
  const int d = poly.dim();
  if (starts < 1) throw InputError("need at least one start");

  if (d == 1) {
    const double a = std::abs(poly.eval(Vec::Constant(1, 1.0)));
    const double b = std::abs(poly.eval(Vec::Constant(1, -1.0)));
    if (a == 0.0 && b == 0.0) throw NumericalError("polynomial vanishes on the sphere");
    const double m = std::max(a, b);
    SphereMaxResult r{SpherePoint(Vec::Constant(1, a >= b ? 1.0 : -1.0)), m, std::log(m), {}, true};
    if (a == b) r.all_near_max = {SpherePoint(Vec::Constant(1, -1.0)), SpherePoint(Vec::Constant(1, 1.0))};
    else r.all_near_max = {r.point};
    return r;
  }

  if (d == 2) {
    const CirclePlane unit(Vec::Unit(2, 0), Vec::Unit(2, 1));
    const TrigPoly t = restrict_to_circle(poly, unit);
    if (t.is_zero()) throw NumericalError("polynomial vanishes on the sphere");
    const auto mx = trig_max_points(t);
    if (!(mx.value > 0.0)) throw NumericalError("polynomial vanishes on the sphere");
    SphereMaxResult r{SpherePoint(unit.at(mx.points.front())), mx.value, std::log(mx.value), {}, true};
    for (double th : mx.points) r.all_near_max.emplace_back(unit.at(th));
    return r;
  }

  const auto results = sphere_local_maxima(poly, starts, seed);
  const auto near = near_maximizers(results);
  if (near.empty()) throw NumericalError("polynomial vanishes on the sphere");
  SphereMaxResult r{SpherePoint(near.front().point), std::exp(near.front().value), near.front().value, {}, false};
  for (const auto& n : near) r.all_near_max.emplace_back(n.point);
  return r;
}

std::vector<AscentResult> sphere_local_maxima(const MultiPoly& poly, int starts, std::uint64_t seed) {
  if (poly.dim() < 2) throw InputError("local maxima search needs d >= 2");
  if (starts < 1) throw InputError("need at least one start");
  const Objective obj{[&](const Vec& x) { return poly.log_abs(x); },
                      [&](const Vec& x) { return poly.log_abs_gradient(x); }};
  return multi_ascend(obj, sphere_starts(poly.dim(), starts, seed), Domain::kSphere);
}

double slice_distance(const AffineForm& form, const SpherePoint& p) {
  if (p.dim() != form.dim()) throw InputError("slice and point differ in dimension");
  const double b = form.offset();
  if (!(std::abs(b) < 1.0)) return kInfiniteDistance;
  const double s = std::clamp(form.normal().dot(p.coords()), -1.0, 1.0);
  return std::abs(std::asin(s) - std::asin(b));
}

Vec nearest_slice_point(const AffineForm& form, const SpherePoint& p) {
  const double b = form.offset();
  if (!(std::abs(b) < 1.0)) throw InputError("slice does not meet the sphere");
  const Vec& a = form.normal();
  Vec e = p.coords() - a.dot(p.coords()) * a;
  if (e.norm() < 1e-14) {
    Mat span(a.size(), 1);
    span.col(0) = a;
    e = orthonormal_complement(span).col(0);
  }
  e.normalize();
  return b * a + std::sqrt(1.0 - b * b) * e;
}

ZeroDistance angular_distance_to_zero_set(const MultiPoly& poly, const SpherePoint& p, int budget) {
  const int d = poly.dim();
  if (p.dim() != d) throw InputError("point and polynomial differ in dimension");
  const Vec& x = p.coords();

  if (poly.is_affine_product()) {
    ZeroDistance out;
    for (const auto& f : poly.factors()) {
      const double dist = slice_distance(f, p);
      if (dist < out.distance) {
        out.distance = dist;
        out.witness = nearest_slice_point(f, p);
      }
    }
    return out;
  }

  if (d == 1) {
    ZeroDistance out;
    const double scale = poly.gradient(x).cwiseAbs().sum() + std::abs(poly.eval(x)) + 1e-300;
    if (std::abs(poly.eval(x)) <= 1e-14 * scale) return {0.0, x};
    if (std::abs(poly.eval(-x)) <= 1e-14 * scale) return {kPi, Vec(-x)};
    return out;
  }

  Mat span(d, 1);
  span.col(0) = x;
  const Mat perp = orthonormal_complement(span);

  if (d == 2) return circle_distance(poly, CirclePlane(x, perp.col(0)));

  const auto dirs = sphere_starts(d - 1, std::max(1, budget), kDistanceSeed);
  std::vector<ZeroDistance> found(dirs.size());
  parallel_for(static_cast<int>(dirs.size()), [&](int i) {
    const Vec v = (perp * dirs[i]).normalized();
    ZeroDistance z = circle_distance(poly, CirclePlane(x, v));
    if (z.witness && z.distance > 0.0) {
      const Vec refined = descend_toward(poly, x, *z.witness);
      const double dr = unit_angle(x, refined);
      if (dr < z.distance) z = {dr, refined};
    }
    found[i] = std::move(z);
  });
  ZeroDistance best;
  for (auto& z : found) {
    if (z.distance < best.distance) best = std::move(z);
  }
  return best;
}

SphereDistanceReport verify_sphere_distance(const MultiPoly& poly, std::uint64_t seed, int starts, double tol) {
  const auto mx = maximize_abs_on_sphere(poly, starts, seed);
  SphereDistanceReport rep{.degree = poly.degree(),
                     .maximizer = mx.point,
                     .value = mx.value,
                     .distance = kInfiniteDistance,
                     .bound = kPi / (2.0 * poly.degree()),
                     .passed = false,
                     .nearest_zero = {},
                     .equality_circle = {},
                     .interlacing = {},
                     .candidates = {}};

  std::optional<Vec> best_witness;
  bool have = false;
  for (const auto& cand : mx.all_near_max) {
    const auto zd = angular_distance_to_zero_set(poly, cand);
    rep.candidates.push_back({cand, zd.distance});
    if (!have || zd.distance > rep.distance) {
      have = true;
      rep.maximizer = cand;
      rep.distance = zd.distance;
      best_witness = zd.witness;
    }
  }
  rep.nearest_zero = best_witness;
  rep.passed = rep.distance >= rep.bound - tol;

  if (best_witness && std::abs(rep.distance - rep.bound) < tol) {
    const auto circle = CirclePlane::through(rep.maximizer.coords(), *best_witness);
    rep.equality_circle = circle;
    const TrigPoly t = restrict_to_circle(poly, circle);
    if (!t.is_zero()) rep.interlacing = interlacing_check(t);
  }
  return rep;
}

}  // namespace planks
