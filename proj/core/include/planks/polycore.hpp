#pragma once

#include "planks/linalg.hpp"
#include "planks/trigpoly.hpp"

#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace planks {

struct Term {
  std::vector<int> exponents;
  double coeff = 0.0;
};

/// L(x) = <normal, x> - offset with a unit normal.
class AffineForm {
 public:
  /// Rescales (normal, offset) so the normal has unit length; the
  /// hyperplane {<normal, x> = offset} is unchanged. Throws on a zero normal.
  AffineForm(Vec normal, double offset);

  int dim() const { return static_cast<int>(normal_.size()); }
  const Vec& normal() const { return normal_; }
  double offset() const { return offset_; }
  double operator()(const Vec& x) const { return normal_.dot(x) - offset_; }

 private:
  Vec normal_;
  double offset_;
};

/// x(theta) = center + radius (u cos theta + v sin theta).
class CirclePlane {
 public:
  CirclePlane(Vec u, Vec v, double radius = 1.0, std::optional<Vec> center = std::nullopt);

  /// Great circle through unit vectors p and q (q not parallel to p), with
  /// p at theta = 0 and q at theta in (0, pi).
  static CirclePlane through(const Vec& p, const Vec& q);

  int dim() const { return static_cast<int>(u_.size()); }
  const Vec& u() const { return u_; }
  const Vec& v() const { return v_; }
  double radius() const { return radius_; }
  const Vec& center() const { return center_; }
  Vec at(double theta) const;

 private:
  Vec u_, v_;
  double radius_;
  Vec center_;
};

/// Univariate real polynomial, coefficients from the constant term up.
using UniPoly = std::vector<double>;

/// Sparse real polynomial in `dim` variables.
///
/// Terms are kept in lexicographic exponent order so that evaluation sums
/// are reproducible. A polynomial built from affine forms remembers its
/// factors; evaluation then runs on the factored form and the expanded
/// terms are produced lazily on first request.
class MultiPoly {
 public:
  MultiPoly(int dim, std::vector<Term> terms);

  static MultiPoly product_of(std::span<const AffineForm> forms);

  int dim() const { return dim_; }
  int degree() const { return degree_; }

  /// Expanded terms (materialized on first call for factored polynomials).
  const std::vector<Term>& terms() const;

  bool is_affine_product() const { return !factors_.empty(); }
  const std::vector<AffineForm>& factors() const { return factors_; }

  double eval(const Vec& x) const;
  Vec gradient(const Vec& x) const;

  /// log|P(x)| (-inf on the zero set) and its gradient grad P / P.
  double log_abs(const Vec& x) const;
  Vec log_abs_gradient(const Vec& x) const;

  /// P(x) P(y) on R^dim x R^dim.
  MultiPoly doubled() const;

 private:
  MultiPoly() = default;
  void check_dim(const Vec& x) const;

  struct Expansion;

  int dim_ = 0;
  int degree_ = 0;
  std::vector<AffineForm> factors_;
  std::shared_ptr<Expansion> expansion_;
};

double eval(const MultiPoly& poly, const Vec& point);
Vec gradient(const MultiPoly& poly, const Vec& point);
MultiPoly product_of_affine_forms(std::span<const AffineForm> forms);

/// Fourier expansion of t -> P(x(t)) along the circle, computed by exact
/// convolution of coordinate harmonics.
TrigPoly restrict_to_circle(const MultiPoly& poly, const CirclePlane& plane);

/// Coefficients of t -> P(origin + t * direction).
UniPoly restrict_to_line(const MultiPoly& poly, const Vec& origin, const Vec& direction);

}  // namespace planks
