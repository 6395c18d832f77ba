#pragma once

#include <complex>
#include <span>
#include <vector>

namespace planks {

/// All complex roots of sum_k c_k z^k (coefficients from the constant term
/// up) via eigenvalues of the balanced companion matrix. Leading
/// coefficients that are exactly zero are dropped first; a polynomial with
/// no nonzero coefficient yields no roots.
std::vector<std::complex<double>> polynomial_roots(std::span<const std::complex<double>> coeffs);
std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs);

/// Real roots of a real polynomial: eigenvalue roots with small imaginary
/// part, polished by Newton's method and de-duplicated. Multiple roots are
/// reported once.
std::vector<double> real_roots(std::span<const double> coeffs);

double horner(std::span<const double> coeffs, double x);
std::complex<double> horner(std::span<const std::complex<double>> coeffs, std::complex<double> z);

}  // namespace planks
