#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace planks {

/// T(theta) = a0 + sum_{k=1..n} (a_k cos k theta + b_k sin k theta).
///
/// The degree is kept tight: trailing harmonics whose coefficients are
/// negligible relative to the largest coefficient are dropped at
/// construction. The identically-zero polynomial is representable (degree 0,
/// a0 = 0) but rejected by the analysis routines in trigcircle.hpp.
class TrigPoly {
 public:
  TrigPoly() = default;
  TrigPoly(double a0, std::vector<std::pair<double, double>> coeffs);

  /// From complex Fourier coefficients c_{-n}..c_{n} (size 2n+1) of a real
  /// function; only c_0..c_n are read.
  static TrigPoly from_fourier(std::span<const std::complex<double>> c);

  static TrigPoly cosine(int n, double amplitude = 1.0);
  static TrigPoly sine(int n, double amplitude = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()); }
  double a0() const { return a0_; }
  const std::vector<std::pair<double, double>>& coeffs() const { return coeffs_; }

  double operator()(double theta) const;
  /// j-th derivative at theta.
  double derivative_at(int order, double theta) const;
  TrigPoly derivative() const;
  /// theta -> T(theta + phi).
  TrigPoly shifted(double phi) const;

  bool is_zero() const;
  /// Largest absolute coefficient (including a0).
  double coeff_scale() const;
  /// Lower estimate of max |T| from a dense sample; within a few percent.
  double sup_norm_estimate() const;

  /// Complex Fourier coefficients c_{-n}..c_{n}.
  std::vector<std::complex<double>> fourier() const;

  TrigPoly operator+(const TrigPoly& other) const;
  TrigPoly operator*(double s) const;
  TrigPoly operator*(const TrigPoly& other) const;

 private:
  void trim();

  double a0_ = 0.0;
  std::vector<std::pair<double, double>> coeffs_;
};

}  // namespace planks
