#pragma once

#include "planks/trigpoly.hpp"

#include <limits>
#include <vector>

namespace planks {

struct CircleZero {
  double theta = 0.0;  // in [0, 2pi)
  int multiplicity = 1;
};

/// Real zeros of a trigonometric polynomial on one period, sorted by angle.
struct CircleZeroSet {
  std::vector<CircleZero> zeros;

  int total_multiplicity() const;
  bool empty() const { return zeros.empty(); }
};

struct TrigMaxima {
  double value = 0.0;          // M = max |T|
  std::vector<double> points;  // all global maximizers of |T|, sorted
};

/// Outcome of the maximum-versus-zero certificate on the circle.
struct MaxZeroCertificate {
  int degree = 0;
  std::vector<double> max_points;
  double max_value = 0.0;
  double signed_max = 0.0;  // T at the maximizer used for the comparison
  double min_distance = std::numeric_limits<double>::infinity();
  double bound = 0.0;  // pi / (2n)
  bool passed = false;
  // Q(theta) = T(theta + theta_max) - signed_max * cos(n theta).
  bool q_identically_zero = false;
  int q_zero_count = 0;            // with multiplicity, per period
  bool q_clear_near_max = false;   // no zero of Q in [-pi/n, 0) u (0, pi/n]
};

struct InterlacingResult {
  bool interlaces = false;
  std::vector<double> arcs;  // consecutive gaps between merged zeros/maxima
};

inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

double trig_eval(const TrigPoly& t, double theta);

/// Zeros with multiplicities via the degree-2n algebraic polynomial in
/// z = e^{i theta}. Throws InputError on the zero polynomial.
CircleZeroSet trig_zeros(const TrigPoly& t);

/// Global maximizers of |T|. A constant polynomial reports theta = 0 as a
/// representative. Throws InputError on the zero polynomial.
TrigMaxima trig_max_points(const TrigPoly& t);

/// Smallest circular distance from a global maximizer of |T| to a zero;
/// +inf when T has no real zeros.
double min_max_to_zero_distance(const TrigPoly& t);

MaxZeroCertificate max_zero_certificate(const TrigPoly& t, double tol = 1e-7);

/// True when T has exactly 2n simple zeros and 2n maximizers of |T| that
/// alternate with all gaps equal to pi/(2n) within `tol`.
InterlacingResult interlacing_check(const TrigPoly& t, double tol = 1e-8);

}  // namespace planks
