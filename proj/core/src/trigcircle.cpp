#include "planks/trigcircle.hpp"

#include "planks/error.hpp"
#include "planks/linalg.hpp"
#include "planks/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace planks {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Roots of z^n T within this distance of |z| = 1 are kept as candidates.
constexpr double kCircleBand = 1e-4;
constexpr double kClusterTol = 1e-6;
constexpr double kMergeTol = 1e-4;
constexpr double kDerivRelTol = 1e-6;
constexpr double kZeroRelTol = 1e-8;
constexpr double kMaxRelTol = 1e-9;

void require_nonzero(const TrigPoly& t) {
  if (t.is_zero()) throw InputError("trigonometric polynomial is identically zero");
}

// Angles of the roots of z^n T(z) lying near the unit circle.
std::vector<double> circle_candidates(const TrigPoly& t) {
  const int n = t.degree();
  if (n == 0) return {};
  const auto c = t.fourier();  // c_{-n}..c_n are the coefficients of z^0..z^{2n}
  std::vector<double> out;
  for (const auto& z : polynomial_roots(std::span<const Complex>(c))) {
    const double r = std::abs(z);
    if (r == 0.0 || std::abs(std::log(r)) > kCircleBand) continue;
    out.push_back(wrap_angle(std::arg(z)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Groups sorted angles into circular clusters whose consecutive gaps are
// below `tol`.
std::vector<std::vector<double>> circular_clusters(const std::vector<double>& sorted, double tol) {
  std::vector<std::vector<double>> groups;
  for (double a : sorted) {
    if (!groups.empty() && a - groups.back().back() <= tol) {
      groups.back().push_back(a);
    } else {
      groups.push_back({a});
    }
  }
  if (groups.size() > 1 &&
      groups.front().front() + kTwoPi - groups.back().back() <= tol) {
    for (double a : groups.front()) groups.back().push_back(a + kTwoPi);
    groups.erase(groups.begin());
  }
  return groups;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Largest m such that T, T', ..., T^{(m-1)} all vanish at theta.
int vanishing_order(const TrigPoly& t, double theta, double sup, int cap) {
  const int n = std::max(1, t.degree());
  int m = 0;
  while (m < cap) {
    const double tol = kDerivRelTol * std::pow(static_cast<double>(n), m) * sup;
    if (std::abs(t.derivative_at(m, theta)) >= tol) break;
    ++m;
  }
  return m;
}

// Newton iteration on T^{(order)}, staying within `radius` of the start.
double newton_on_derivative(const TrigPoly& t, int order, double theta, double radius) {
  const double start = theta;
  for (int it = 0; it < 50; ++it) {
    const double f = t.derivative_at(order, theta);
    const double df = t.derivative_at(order + 1, theta);
    if (f == 0.0 || df == 0.0) break;
    const double step = f / df;
    const double next = theta - step;
    if (std::abs(next - start) > radius) break;
    if (std::abs(t.derivative_at(order, next)) > std::abs(f)) break;
    theta = next;
    if (std::abs(step) < 1e-16) break;
  }
  return theta;
}

}  // namespace

int CircleZeroSet::total_multiplicity() const {
  int s = 0;
  for (const auto& z : zeros) s += z.multiplicity;
  return s;
}

double trig_eval(const TrigPoly& t, double theta) { return t(theta); }

CircleZeroSet trig_zeros(const TrigPoly& t) {
  require_nonzero(t);
  CircleZeroSet out;
  const int n = t.degree();
  if (n == 0) return out;
  const double sup = t.sup_norm_estimate();

  auto groups = circular_clusters(circle_candidates(t), kClusterTol);

  // Second pass: neighbouring clusters that are really one higher-order zero
  // split apart by round-off.
  bool merged = true;
  while (merged && groups.size() > 1) {
    merged = false;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      auto& a = groups[i];
      auto& b = groups[(i + 1) % groups.size()];
      double gap = b.front() - a.back();
      if (i + 1 == groups.size()) gap += kTwoPi;
      if (gap > kMergeTol) continue;
      std::vector<double> joined = a;
      const double lift = (i + 1 == groups.size()) ? kTwoPi : 0.0;
      for (double x : b) joined.push_back(x + lift);
      const int want = static_cast<int>(joined.size());
      if (vanishing_order(t, mean(joined), sup, want) < want) continue;
      if (i + 1 == groups.size()) {
        groups.back() = joined;
        groups.erase(groups.begin());
      } else {
        a = joined;
        groups.erase(groups.begin() + static_cast<long>(i) + 1);
      }
      merged = true;
      break;
    }
  }

  for (const auto& g : groups) {
    const int m = static_cast<int>(g.size());
    double theta = newton_on_derivative(t, m - 1, mean(g), 1e-5);
    if (std::abs(t(theta)) >= kZeroRelTol * sup) continue;
    out.zeros.push_back({wrap_angle(theta), m});
  }
  std::sort(out.zeros.begin(), out.zeros.end(),
            [](const CircleZero& a, const CircleZero& b) { return a.theta < b.theta; });
  return out;
}

TrigMaxima trig_max_points(const TrigPoly& t) {
  require_nonzero(t);
  const int n = t.degree();
  if (n == 0) return {std::abs(t.a0()), {0.0}};

  const TrigPoly dt = t.derivative();
  std::vector<double> cand = circle_candidates(dt);
  // Dense-grid local maxima guard against critical points the eigen solver
  // pushed off the circle.
  const int samples = 16 * (n + 1);
  for (int i = 0; i < samples; ++i) {
    const double a = kTwoPi * (i - 1) / samples;
    const double b = kTwoPi * i / samples;
    const double c = kTwoPi * (i + 1) / samples;
    const double fb = std::abs(t(b));
    if (fb >= std::abs(t(a)) && fb >= std::abs(t(c))) cand.push_back(b);
  }

  std::vector<std::pair<double, double>> scored;  // (|T|, theta)
  for (double theta : cand) {
    const double refined = wrap_angle(newton_on_derivative(t, 1, theta, 0.5 * kPi / (n + 1)));
    scored.emplace_back(std::abs(t(refined)), refined);
  }
  double m = 0.0;
  for (const auto& [v, th] : scored) m = std::max(m, v);

  std::vector<double> pts;
  for (const auto& [v, th] : scored) {
    if (v >= m * (1.0 - kMaxRelTol)) pts.push_back(th);
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> unique;
  for (double th : pts) {
    if (!unique.empty() && circular_distance(th, unique.back()) < 1e-7) continue;
    unique.push_back(th);
  }
  if (unique.size() > 1 && circular_distance(unique.front(), unique.back()) < 1e-7) {
    unique.pop_back();
  }
  return {m, unique};
}

double min_max_to_zero_distance(const TrigPoly& t) {
  const auto zeros = trig_zeros(t);
  if (zeros.empty()) return kInfiniteDistance;
  const auto maxima = trig_max_points(t);
  double best = kInfiniteDistance;
  for (double p : maxima.points) {
    for (const auto& z : zeros.zeros) best = std::min(best, circular_distance(p, z.theta));
  }
  return best;
}

MaxZeroCertificate max_zero_certificate(const TrigPoly& t, double tol) {
  require_nonzero(t);
  MaxZeroCertificate rep;
  rep.degree = t.degree();
  const auto maxima = trig_max_points(t);
  rep.max_points = maxima.points;
  rep.max_value = maxima.value;
  rep.min_distance = min_max_to_zero_distance(t);

  const int n = rep.degree;
  if (n == 0) {
    rep.bound = kInfiniteDistance;
    rep.signed_max = t.a0();
    rep.passed = true;
    rep.q_identically_zero = false;
    rep.q_clear_near_max = true;
    return rep;
  }
  rep.bound = kPi / (2.0 * n);

  const double theta_max = maxima.points.front();
  rep.signed_max = t(theta_max);
  const TrigPoly q = t.shifted(theta_max) + TrigPoly::cosine(n, -rep.signed_max);
  const double sup_t = t.sup_norm_estimate();
  rep.q_identically_zero = q.is_zero() || q.sup_norm_estimate() < 1e-10 * sup_t;

  if (rep.q_identically_zero) {
    rep.q_zero_count = 2 * n;
    rep.q_clear_near_max = true;
  } else {
    const auto qz = trig_zeros(q);
    rep.q_zero_count = qz.total_multiplicity();
    rep.q_clear_near_max = true;
    for (const auto& z : qz.zeros) {
      const double d = circular_distance(z.theta, 0.0);
      if (d > 1e-6 && d <= kPi / n + 1e-9) rep.q_clear_near_max = false;
    }
  }
  rep.passed = rep.min_distance >= rep.bound - tol;
  return rep;
}

InterlacingResult interlacing_check(const TrigPoly& t, double tol) {
  require_nonzero(t);
  InterlacingResult res;
  const int n = t.degree();
  if (n == 0) return res;
  const auto zeros = trig_zeros(t);
  const auto maxima = trig_max_points(t);

  std::vector<std::pair<double, int>> events;  // (theta, 0 = zero, 1 = max)
  bool simple = true;
  for (const auto& z : zeros.zeros) {
    events.emplace_back(z.theta, 0);
    simple = simple && z.multiplicity == 1;
  }
  for (double p : maxima.points) events.emplace_back(p, 1);
  std::sort(events.begin(), events.end());
  if (events.empty()) return res;

  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& a = events[i];
    const auto& b = events[(i + 1) % events.size()];
    double gap = b.first - a.first;
    if (i + 1 == events.size()) gap += kTwoPi;
    res.arcs.push_back(gap);
  }

  const std::size_t want = 2 * static_cast<std::size_t>(n);
  bool ok = simple && zeros.zeros.size() == want && maxima.points.size() == want;
  for (std::size_t i = 0; ok && i < events.size(); ++i) {
    if (events[i].second == events[(i + 1) % events.size()].second) ok = false;
  }
  const double arc = kPi / (2.0 * n);
  for (double g : res.arcs) ok = ok && std::abs(g - arc) <= tol;
  res.interlaces = ok;
  return res;
}

}  // namespace planks
