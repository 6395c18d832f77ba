#include "planks/covering.hpp"

#include "planks/ballfinder.hpp"
#include "planks/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace planks {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxPieces = 200;
constexpr int kEscalations = 3;

Vec checked_unit(Vec a) {
  const double n = a.norm();
  if (!a.allFinite() || std::abs(n - 1.0) > 1e-6) throw InputError("normal must be a unit vector");
  return a / n;
}

// Pieces of width `unit` covering [mid - count unit / 2, mid + count unit / 2],
// moved inside [-lim, lim] if it sticks out. Returns the piece centres.
std::vector<double> piece_centres(double mid, int count, double unit, double lim) {
  const double half = 0.5 * count * unit;
  double lo = mid - half;
  if (lo + 2.0 * half > lim) lo = lim - 2.0 * half;
  if (lo < -lim) lo = -lim;
  std::vector<double> out;
  for (int j = 0; j < count; ++j) out.push_back(lo + (j + 0.5) * unit);
  return out;
}

struct Schedule {
  double unit = 0.0;
  std::vector<int> counts;
  int pieces = 0;
};

Schedule schedule_for(const std::vector<double>& widths, double unit) {
  Schedule s{unit, {}, 0};
  for (double w : widths) {
    s.counts.push_back(std::max(1, static_cast<int>(std::ceil(w / unit - 1e-9))));
    s.pieces += s.counts.back();
  }
  return s;
}

// Fewest pieces of a common width u with sum ceil(w_i / u) u <= limit. The
// candidates are u = 1/N and u = w_i / j, so equal widths need no rounding.
Schedule choose_schedule(const std::vector<double>& widths, double limit, int max_pieces) {
  std::vector<double> units;
  for (int N = 1; N <= max_pieces; ++N) units.push_back(1.0 / N);
  for (double w : widths) {
    for (int j = 1; j <= max_pieces; ++j) units.push_back(w / j);
  }
  std::optional<Schedule> best;
  for (double u : units) {
    const auto s = schedule_for(widths, u);
    if (s.pieces > max_pieces || s.pieces * u > limit) continue;
    if (!best || s.pieces < best->pieces || (s.pieces == best->pieces && u < best->unit)) best = s;
  }
  if (!best) {
    throw InputError("covering needs more than " + std::to_string(max_pieces) +
                     " pieces; the widths leave too little slack");
  }
  return *best;
}

double min_of(const std::vector<double>& v) {
  return v.empty() ? kInfiniteDistance : *std::min_element(v.begin(), v.end());
}

// Keeps the first verified candidate in rank order, or else the one with
// the largest worst-case clearance. Returns true once verified.
bool consider(RefutationResult& r, bool& have, const Vec& x, std::vector<double> c, int rank) {
  if (!have || (min_of(r.clearances) <= 0.0 && min_of(c) > min_of(r.clearances))) {
    r.point = x;
    r.clearances = std::move(c);
    r.local_max_rank = rank;
    have = true;
  }
  return min_of(r.clearances) > 0.0;
}

void finish(RefutationResult& r) {
  double worst = kInfiniteDistance;
  for (std::size_t i = 0; i < r.clearances.size(); ++i) {
    if (r.clearances[i] < worst) {
      worst = r.clearances[i];
      r.offending = static_cast<int>(i);
    }
  }
  r.verified = worst > 0.0;
  if (r.verified) r.offending.reset();
}

}  // namespace

SphericalSegment::SphericalSegment(Vec normal, double offset, double half_width)
    : normal_(checked_unit(std::move(normal))), offset_(offset), half_width_(half_width) {
  if (!(std::abs(offset) < 1.0)) throw InputError("segment offset must lie in (-1, 1)");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw InputError("segment half-width must be positive");
}

Plank::Plank(Vec normal, double center, double half_width)
    : normal_(checked_unit(std::move(normal))), center_(center), half_width_(half_width) {
  if (!std::isfinite(center)) throw InputError("plank centre must be finite");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw InputError("plank half-width must be positive");
}

double segment_clearance(const SphericalSegment& seg, const SpherePoint& x) {
  return slice_distance(seg.core(), x) - seg.half_width();
}

bool segment_contains(const SphericalSegment& seg, const SpherePoint& x) { return segment_clearance(seg, x) <= 0.0; }

double plank_clearance(const Plank& plank, const Vec& x) {
  if (x.size() != plank.dim()) throw InputError("point and plank differ in dimension");
  return std::abs(plank.normal().dot(x) - plank.center()) - plank.half_width();
}

SplitResult split_segments(const std::vector<SphericalSegment>& segments, double margin, int max_pieces) {
  if (!(margin > 0.0)) throw InputError("margin must be positive");
  std::vector<double> widths;
  double total = 0.0;
  for (const auto& s : segments) {
    widths.push_back(s.width());
    total += s.width();
  }
  if (!(total + margin < kPi)) throw InputError("infeasible margin: widths plus margin reach pi");
  const auto plan = choose_schedule(widths, kPi - margin, max_pieces);
  SplitResult out;
  out.N = 1.0 / plan.unit;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    for (double lat : piece_centres(std::asin(s.offset()), plan.counts[i], plan.unit, 0.5 * kPi)) {
      out.virtual_segments.emplace_back(s.normal(), std::sin(lat), 0.5 * plan.unit);
    }
    out.rounded_total += plan.counts[i] * plan.unit;
  }
  return out;
}

RefutationResult refute_cover_sphere(const std::vector<SphericalSegment>& segments, std::uint64_t seed,
                                     int starts) {
  if (segments.empty()) throw InputError("no segments given");
  const int d = segments.front().dim();
  if (d < 2) throw InputError("spheres of dimension at least 1 are needed (d >= 2)");
  RefutationResult r;
  r.budget = kPi;
  for (const auto& s : segments) {
    if (s.dim() != d) throw InputError("segments differ in dimension");
    r.total_width += s.width();
  }
  if (!(r.total_width < kPi)) throw InputError("segment widths sum to at least pi");

  const auto split = split_segments(segments, 0.01 * (kPi - r.total_width), kMaxPieces);
  r.split_N = split.N;
  r.factors = static_cast<int>(split.virtual_segments.size());
  std::vector<AffineForm> cores;
  for (const auto& v : split.virtual_segments) cores.push_back(v.core());
  const MultiPoly poly = MultiPoly::product_of(cores);

  const auto clear_all = [&](const Vec& x) {
    const SpherePoint p(x);
    std::vector<double> c;
    for (const auto& s : segments) c.push_back(segment_clearance(s, p));
    return c;
  };

  bool have = false;
  if (d == 2) {
    const auto mx = maximize_abs_on_sphere(poly, starts, seed);
    for (std::size_t i = 0; i < mx.all_near_max.size(); ++i) {
      const Vec& x = mx.all_near_max[i].coords();
      if (consider(r, have, x, clear_all(x), static_cast<int>(i))) break;
    }
  } else {
    bool done = false;
    for (int attempt = 0; attempt <= kEscalations && !done; ++attempt) {
      const auto maxima = sphere_local_maxima(poly, starts << (2 * attempt), seed + attempt);
      for (std::size_t i = 0; i < maxima.size() && !done; ++i) {
        if (!std::isfinite(maxima[i].value)) continue;
        const Vec x = SpherePoint(maxima[i].point).coords();
        done = consider(r, have, x, clear_all(x), static_cast<int>(i));
      }
    }
  }
  if (!have) throw NumericalError("no point with a nonzero value was found");
  finish(r);
  return r;
}

RefutationResult refute_cover_ball(const std::vector<Plank>& planks, std::uint64_t seed, int starts) {
  if (planks.empty()) throw InputError("no planks given");
  const int d = planks.front().dim();
  RefutationResult r;
  r.budget = 2.0;
  std::vector<double> widths;
  for (const auto& p : planks) {
    if (p.dim() != d) throw InputError("planks differ in dimension");
    r.total_width += p.width();
    widths.push_back(p.width());
  }
  if (!(r.total_width < 2.0)) throw InputError("plank widths sum to at least 2");

  const auto plan = choose_schedule(widths, 2.0 - 0.01 * (2.0 - r.total_width), kMaxPieces);
  r.split_N = 1.0 / plan.unit;
  std::vector<AffineForm> centres;
  for (std::size_t i = 0; i < planks.size(); ++i) {
    const auto& p = planks[i];
    for (double c : piece_centres(p.center(), plan.counts[i], plan.unit, kInfiniteDistance)) {
      // Pieces that miss the ball constrain nothing.
      if (std::abs(c) < 1.0 + 0.5 * plan.unit) centres.emplace_back(p.normal(), c);
    }
  }
  r.factors = static_cast<int>(centres.size());

  const auto clear_all = [&](const Vec& x) {
    std::vector<double> c;
    for (const auto& p : planks) c.push_back(plank_clearance(p, x));
    return c;
  };

  if (centres.empty()) {
    r.point = Vec::Zero(d);
    r.clearances = clear_all(r.point);
    finish(r);
    return r;
  }

  const MultiPoly poly = MultiPoly::product_of(centres);
  bool have = false, done = false;
  for (int attempt = 0; attempt <= kEscalations && !done; ++attempt) {
    const auto maxima = multiplier_local_maxima(poly, seed + attempt, starts << (2 * attempt));
    for (std::size_t i = 0; i < maxima.size() && !done; ++i) {
      if (!std::isfinite(maxima[i].value)) continue;
      Vec x = maxima[i].point;
      if (x.norm() > 1.0) x.normalize();
      done = consider(r, have, x, clear_all(x), static_cast<int>(i));
    }
  }
  if (!have) throw NumericalError("no point with a nonzero value was found");
  finish(r);
  return r;
}

CoverageSample is_covered_sample(const std::vector<SphericalSegment>& segments, int resolution, int dim) {
  if (resolution < 1) throw InputError("resolution must be positive");
  if (dim < 2) throw InputError("sampling needs d >= 2");
  for (const auto& s : segments) {
    if (s.dim() != dim) throw InputError("segment and sample dimension differ");
  }
  std::vector<Vec> pts;
  if (dim == 2) {
    for (int j = 0; j < resolution; ++j) {
      const double t = 2.0 * kPi * j / resolution;
      pts.push_back((Vec(2) << std::cos(t), std::sin(t)).finished());
    }
  } else if (dim == 3) {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < resolution; ++j) {
      const double z = 1.0 - (2.0 * j + 1.0) / resolution;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      pts.push_back((Vec(3) << rho * std::cos(golden * j), rho * std::sin(golden * j), z).finished());
    }
  } else {
    std::mt19937_64 rng(static_cast<std::uint64_t>(resolution));
    std::normal_distribution<double> g;
    for (int j = 0; j < resolution; ++j) {
      Vec x(dim);
      for (int i = 0; i < dim; ++i) x[i] = g(rng);
      pts.push_back(x.normalized());
    }
  }

  CoverageSample out;
  int covered = 0;
  double best = -kInfiniteDistance;
  for (const auto& x : pts) {
    const SpherePoint p(x);
    double worst = kInfiniteDistance;
    for (const auto& s : segments) worst = std::min(worst, segment_clearance(s, p));
    if (worst <= 0.0) {
      ++covered;
    } else if (worst > best) {
      best = worst;
      out.witness_uncovered = x;
    }
  }
  out.covered_fraction = static_cast<double>(covered) / pts.size();
  return out;
}

}  // namespace planks
