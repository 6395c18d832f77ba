#pragma once

#include "planks/linalg.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <string_view>
#include <vector>

namespace planks {

/// Name and version of the start-point generator recorded in reports.
inline constexpr std::string_view kGeneratorName = "mt19937_64+halton-cp/v1";

/// A smooth objective to maximize. `value` may return -inf (e.g. log|P| on
/// the zero set); `gradient` is only requested where value is finite.
struct Objective {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
};

enum class Domain {
  kSphere,  // unit sphere S^{d-1}
  kBall,    // closed unit ball B^d
  kPlane,   // all of R^d
};

struct AscentOptions {
  int gradient_iterations = 400;
  int newton_iterations = 40;
  double gradient_tol = 1e-11;
};

struct AscentResult {
  Vec point;
  double value = -std::numeric_limits<double>::infinity();
  double gradient_norm = 0.0;  // Riemannian / projected gradient at the end
  bool converged = false;
};

/// Local maximization from one start: Armijo-backtracked (projected)
/// gradient ascent, then Newton polish with a finite-difference Hessian of
/// the analytic gradient. On the ball, points that end on the boundary with
/// an outward gradient are polished on the sphere.
AscentResult ascend(const Objective& f, Vec start, Domain domain, const AscentOptions& opts = {});

/// Runs `ascend` from every start, in parallel; the returned list is sorted
/// by value (descending) and then lexicographically by point, so it does
/// not depend on scheduling.
std::vector<AscentResult> multi_ascend(const Objective& f, const std::vector<Vec>& starts,
                                       Domain domain, const AscentOptions& opts = {});

/// Results whose value is within `log_tol` of the best (values are logs, so
/// this is a relative tolerance on the underlying magnitude), with points
/// closer than `merge_dist` merged.
std::vector<AscentResult> near_maximizers(const std::vector<AscentResult>& sorted,
                                          double log_tol = 1e-9, double merge_dist = 1e-6);

/// Seeded low-discrepancy samples: a Halton sequence with a random
/// Cranley-Patterson shift drawn from mt19937_64(seed).
std::vector<Vec> halton_points(int dim, int count, std::uint64_t seed);
std::vector<Vec> sphere_starts(int dim, int count, std::uint64_t seed);
/// Interior points plus a share of boundary points and the centre.
std::vector<Vec> ball_starts(int dim, int count, std::uint64_t seed);

/// Evaluates fn(i) for i in [0, count) on a small thread pool.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace planks
