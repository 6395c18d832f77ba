#pragma once

#include "planks/linalg.hpp"
#include "planks/trigcircle.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace planks {

struct ComplexTerm {
  std::vector<int> exponents;
  Complex coeff;
};

/// Homogeneous polynomial in d complex variables. Polynomials built from
/// linear forms keep the forms, which makes zero-set distances exact.
class ComplexHomogPoly {
 public:
  /// Merges repeated monomials and drops zero coefficients. Throws
  /// InputError on mixed total degrees, negative exponents or P = 0.
  ComplexHomogPoly(int dim, std::vector<ComplexTerm> terms);

  /// Product of the forms z -> sum_j c_j z_j.
  static ComplexHomogPoly product_of_linear(const std::vector<CVec>& forms);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::vector<ComplexTerm>& terms() const { return terms_; }
  const std::vector<CVec>& linear_factors() const { return factors_; }
  bool is_linear_product() const { return !factors_.empty(); }

  Complex eval(const CVec& z) const;
  /// Holomorphic partial derivatives dP/dz_j.
  CVec gradient(const CVec& z) const;
  /// Sum of coefficient magnitudes, a scale for zero tests.
  double coeff_norm() const;

 private:
  ComplexHomogPoly() = default;

  int dim_ = 0;
  int degree_ = 0;
  std::vector<ComplexTerm> terms_;
  std::vector<CVec> factors_;
};

Complex cplx_eval(const ComplexHomogPoly& poly, const CVec& z);

/// A point of C^d as 2d reals (real parts, then imaginary parts), and back.
Vec to_real(const CVec& z);
CVec to_complex(const Vec& x);

/// arccos |<p, z>| for unit p, z, computed without cancellation near 0.
double hermitian_distance(const CVec& p, const CVec& z);

struct WeightedItem {
  ComplexHomogPoly poly;
  double delta = 0.0;
};

/// Polynomials P_k with weights delta_k, subject to
/// sum delta_k^2 deg P_k <= 1.
class WeightedSystem {
 public:
  explicit WeightedSystem(std::vector<WeightedItem> items);

  const std::vector<WeightedItem>& items() const { return items_; }
  int dim() const { return items_.front().poly.dim(); }
  double budget() const { return budget_; }  // sum delta_k^2 deg P_k

 private:
  std::vector<WeightedItem> items_;
  double budget_ = 0.0;
};

struct WeightedMaxResult {
  CVec point;                 // unit vector of C^d
  double value = 0.0;         // sum delta_k^2 log|P_k(point)|
  std::vector<CVec> all_near_max;
};

/// Maximizes sum delta_k^2 log|P_k| over the unit sphere of C^d.
/// Throws NumericalError if some P_k vanishes on the whole sphere.
WeightedMaxResult maximize_weighted_log(const WeightedSystem& system, int starts = 64,
                                        std::uint64_t seed = 0);

struct ComplexZeroDistance {
  double distance = kInfiniteDistance;
  std::optional<CVec> witness;
};

/// min arccos |<p, z>| over unit zeros z of P. Exact for products of linear
/// forms and for d <= 2 (roots of the dehomogenized polynomial); for d >= 3
/// an upper estimate from `budget` complex lines through p, refined by
/// descent along the zero set.
ComplexZeroDistance complex_zero_distance(const ComplexHomogPoly& poly, const CVec& p, int budget = 64);

struct ComplexItemReport {
  int degree = 0;
  double distance = kInfiniteDistance;
  double bound = 0.0;
  double euclidean_distance = 0.0;  // sin(distance), the chordal distance to the zero set
  bool passed = false;
  std::optional<CVec> nearest_zero;
};

struct ComplexReport {
  CVec maximizer;
  double log_value = 0.0;
  std::vector<ComplexItemReport> items;
  bool passed = false;
  std::optional<double> cp1_radius;  // tan(distance), d = 2 and n >= 2 only
};

/// Maximizer of |P| must sit at distance >= arcsin(1/sqrt(n)) from Z(P).
ComplexReport verify_complex_distance(const ComplexHomogPoly& poly, std::uint64_t seed = 0, int starts = 64,
                              double tol = 1e-6);

struct Cp1RadiusResult {
  double a = 0.0;           // chart radius |w| of the maximizer
  double bound = 0.0;       // a^2 must be at least 1 / (n - 1)
  bool passed = false;
  CVec maximizer;           // the maximizer as a unit vector of C^2
};

/// In the chart w -> (zero + w u) / sqrt(1 + |w|^2) of the projective line,
/// maximizes |P| (1 + |w|^2)^{-n/2} and reports the radius of the maximizer.
/// Requires d = 2, n >= 2 and P(zero) = 0.
Cp1RadiusResult cp1_radius_check(const ComplexHomogPoly& poly, const CVec& zero, std::uint64_t seed = 0,
                                 int starts = 64);

/// The weighted maximizer sits at distance >= arcsin(delta_k) from each Z(P_k).
ComplexReport verify_weighted_distances(const WeightedSystem& system, std::uint64_t seed = 0, int starts = 64,
                              double tol = 1e-6);

}  // namespace planks
