#pragma once

#include "planks/linalg.hpp"
#include "planks/sphereopt.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace planks {

/// Points of the sphere within intrinsic distance `half_width` of the slice
/// {<normal, x> = offset}: |arcsin<a, x> - arcsin b| <= delta. A zone has b = 0.
class SphericalSegment {
 public:
  /// The normal must be unit length within 1e-6 (it is then renormalized);
  /// requires |offset| < 1 and half_width > 0.
  SphericalSegment(Vec normal, double offset, double half_width);

  int dim() const { return static_cast<int>(normal_.size()); }
  const Vec& normal() const { return normal_; }
  double offset() const { return offset_; }
  double half_width() const { return half_width_; }
  double width() const { return 2.0 * half_width_; }
  AffineForm core() const { return AffineForm(normal_, offset_); }

 private:
  Vec normal_;
  double offset_;
  double half_width_;
};

/// {x in R^d : |<normal, x> - center| <= half_width}.
class Plank {
 public:
  Plank(Vec normal, double center, double half_width);

  int dim() const { return static_cast<int>(normal_.size()); }
  const Vec& normal() const { return normal_; }
  double center() const { return center_; }
  double half_width() const { return half_width_; }
  double width() const { return 2.0 * half_width_; }

 private:
  Vec normal_;
  double center_;
  double half_width_;
};

bool segment_contains(const SphericalSegment& seg, const SpherePoint& x);
/// Intrinsic distance from x to the segment's core minus its half-width.
double segment_clearance(const SphericalSegment& seg, const SpherePoint& x);
double plank_clearance(const Plank& plank, const Vec& x);

struct SplitResult {
  std::vector<SphericalSegment> virtual_segments;  // all of half-width 1 / (2N)
  double N = 0.0;              // pieces have width 1/N; N need not be an integer
  double rounded_total = 0.0;  // sum of widened widths, a multiple of 1/N
};

/// Widens every segment to a multiple of a common piece width 1/N, keeping
/// the widened total at most pi - margin with as few pieces as possible,
/// and cuts each widened segment into abutting pieces of width 1/N. The
/// piece widths tried are 1/N for integer N and w_i / j. Throws InputError
/// if the margin cannot be met within `max_pieces` pieces.
SplitResult split_segments(const std::vector<SphericalSegment>& segments, double margin,
                           int max_pieces = 200);

struct RefutationResult {
  Vec point;
  std::vector<double> clearances;  // per original piece: distance minus half-width
  double total_width = 0.0;
  double budget = 0.0;             // pi for spheres, 2 for balls
  double split_N = 0.0;            // pieces of the split have width 1 / split_N
  int factors = 0;                 // degree of the auxiliary product
  bool verified = false;           // every clearance > 0
  std::optional<int> offending;    // piece with the smallest clearance when not verified
  int local_max_rank = 0;          // 0 when the point is the best local maximum found
};

/// Finds a point of the sphere outside every segment when the widths sum
/// to less than pi. Throws InputError on a violated precondition.
RefutationResult refute_cover_sphere(const std::vector<SphericalSegment>& segments, std::uint64_t seed = 0,
                                     int starts = 64);

/// Finds a point of the unit ball outside every plank when the widths sum
/// to less than 2.
RefutationResult refute_cover_ball(const std::vector<Plank>& planks, std::uint64_t seed = 0,
                                   int starts = 64);

struct CoverageSample {
  double covered_fraction = 0.0;
  std::optional<Vec> witness_uncovered;  // the uncovered sample farthest from all segments
};

/// Fraction of sample points of S^{dim-1} lying in some segment: a uniform
/// angle grid for dim = 2, a Fibonacci lattice for dim = 3 and seeded
/// Gaussian samples otherwise; `resolution` is the number of samples.
CoverageSample is_covered_sample(const std::vector<SphericalSegment>& segments, int resolution, int dim);

}  // namespace planks
