#pragma once

#include "planks/linalg.hpp"
#include "planks/optim.hpp"
#include "planks/polycore.hpp"
#include "planks/trigcircle.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace planks {

/// A point of the closed unit ball (norm <= 1 + 1e-12).
class BallPoint {
 public:
  explicit BallPoint(Vec coords);
  const Vec& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }

 private:
  Vec coords_;
};

struct EuclideanZeroDistance {
  double distance = kInfiniteDistance;
  std::optional<Vec> witness;
};

/// Euclidean distance from p to the real zero set of P in R^d. Exact for
/// products of affine forms and in d = 1; otherwise an upper estimate
/// from `budget` lines through p, refined by descent along Z(P).
EuclideanZeroDistance euclidean_zero_distance(const MultiPoly& poly, const BallPoint& p, int budget = 64);

/// Audit trail of the pair method: (p, q) maximizes |P(x) P(y)| on the
/// unit sphere of R^d x R^d and the shorter half is the answer.
struct PairCertificate {
  Vec p, q;               // halves of the sphere maximizer, ordered so |p| <= |q|
  bool swapped = false;   // true when the maximizer's second half was shorter
  Vec chosen;             // = p
  double sphere_distance = kInfiniteDistance;  // to Z(P(x)P(y)) on the sphere
  double sphere_bound = 0.0;                   // pi / (4n)
  double chord_bound = 0.0;                    // 2 sin(pi / (8n)) >= 1 / (2n)
  double ball_distance = kInfiniteDistance;    // from `chosen` to Z(P)
  double bound = 0.0;                          // 1 / (8n)
  bool passed = false;
  // Lift of the nearest zero p0: (p0, t q) lies on the sphere.
  std::optional<Vec> nearest_zero;
  std::optional<double> lift_t;
  double lift_gap_bound = 0.0;  // (sqrt 2 - 1) / (2 sqrt 2 n)
  bool lift_bound_applies = false;  // |p0 - p| < 1 / (8n)
};

PairCertificate pair_point(const MultiPoly& poly, std::uint64_t seed = 0, int starts = 64, double tol = 1e-6);

struct BallCandidate {
  Vec point;
  double distance = kInfiniteDistance;
};

struct MultiplierResult {
  BallPoint point;
  double log_value = 0.0;  // log |P(x) G_n(|x|)| at the point
  double distance = kInfiniteDistance;
  double bound = 0.0;      // 1 / n
  bool passed = false;
  std::optional<Vec> nearest_zero;
  std::vector<BallCandidate> candidates;  // every near-maximizer with its distance
};

/// Maximizes |P(x) G_n(|x|)| over the ball and returns, among the
/// near-maximizers, the one farthest from Z(P).
MultiplierResult multiplier_point(const MultiPoly& poly, std::uint64_t seed = 0, int starts = 64,
                                  double tol = 1e-6);

/// Every local maximum of log|P(x) G_n(|x|)| over the ball reached from the
/// seeded starts, best first.
std::vector<AscentResult> multiplier_local_maxima(const MultiPoly& poly, std::uint64_t seed = 0,
                                                  int starts = 64);

/// Plain maximization of |P| over the ball, reporting the near-maximizer
/// closest to Z(P). Shows how close the unweighted maximum can sit to zeros.
MultiplierResult naive_ball_maximizer(const MultiPoly& poly, std::uint64_t seed = 0, int starts = 64);

/// Zero set of the degree-k Chebyshev product lifted to the sphere of
/// radius r_k = 2k / (n pi), seen as parallel hyperplanes.
struct LiftedDiagnostics {
  int n = 0, k = 0;
  double r_k = 0.0;
  std::vector<double> latitudes;         // hyperplane heights, ascending
  std::vector<double> spherical_heights; // signed arc length from the equator, ascending
  int count = 0;
  double spacing = 0.0;        // first consecutive spherical gap
  double spacing_error = 0.0;  // max |gap - 2/n|
  double cap_radius = 0.0;     // spherical radius of each polar cap free of zeros
  bool count_ok = false, spacing_ok = false, cap_ok = false;
};

/// Requires 1 <= n < k with k = n (mod 2).
LiftedDiagnostics lifted_diagnostics(int n, int k);

}  // namespace planks
