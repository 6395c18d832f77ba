#pragma once

#include "planks/linalg.hpp"
#include "planks/optim.hpp"
#include "planks/polycore.hpp"
#include "planks/trigcircle.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace planks {

/// A point of the unit sphere; the constructor renormalizes.
class SpherePoint {
 public:
  explicit SpherePoint(Vec coords);
  const Vec& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }

 private:
  Vec coords_;
};

struct SphereMaxResult {
  SpherePoint point;
  double value = 0.0;      // max |P| on the sphere
  double log_value = 0.0;  // log of `value`, finite even when `value` underflows
  std::vector<SpherePoint> all_near_max;
  bool certified = false;  // true when found exactly via the circle restriction (d = 2)
};

/// Distance estimate together with the zero that realizes it.
struct ZeroDistance {
  double distance = kInfiniteDistance;
  std::optional<Vec> witness;
};

struct SphereCandidate {
  SpherePoint point;
  double distance = kInfiniteDistance;
};

struct SphereDistanceReport {
  int degree = 0;
  SpherePoint maximizer;
  double value = 0.0;
  double distance = kInfiniteDistance;
  double bound = 0.0;  // pi / (2n)
  bool passed = false;
  std::optional<Vec> nearest_zero;
  std::optional<CirclePlane> equality_circle;
  std::optional<InterlacingResult> interlacing;
  std::vector<SphereCandidate> candidates;  // every near-maximizer examined
};

/// Global maximization of |P| over S^{d-1}. In d = 2 the answer comes from
/// the exact critical points of the restriction to the circle; otherwise
/// from a seeded multi-start ascent on log|P| with Newton polish.
/// Throws NumericalError if P vanishes on the whole sphere.
SphereMaxResult maximize_abs_on_sphere(const MultiPoly& poly, int starts = 64, std::uint64_t seed = 0);

/// Every local maximum of log|P| reached from the seeded starts (d >= 2),
/// best first. Used when any point with a checkable property will do.
std::vector<AscentResult> sphere_local_maxima(const MultiPoly& poly, int starts, std::uint64_t seed);

/// Intrinsic distance |arcsin<a, p> - arcsin b| from p to the slice
/// {<a, x> = b} of the sphere; +inf when |b| >= 1.
double slice_distance(const AffineForm& form, const SpherePoint& p);

/// Closest point of the slice to p (requires |b| < 1).
Vec nearest_slice_point(const AffineForm& form, const SpherePoint& p);

/// Angular distance from p to Z(P) on the sphere. Exact for products of
/// affine forms (closed form) and in d <= 2 (circle restriction); for
/// d >= 3 an upper estimate from `budget` great circles through p, each
/// candidate zero refined by a constrained descent toward p. Larger
/// budgets examine a superset of circles, so the estimate never grows.
ZeroDistance angular_distance_to_zero_set(const MultiPoly& poly, const SpherePoint& p, int budget = 64);

SphereDistanceReport verify_sphere_distance(const MultiPoly& poly, std::uint64_t seed = 0, int starts = 64,
                               double tol = 1e-6);

}  // namespace planks
