#include "planks/roots.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>

namespace planks {

namespace {

template <typename Scalar>
std::vector<std::complex<double>> roots_impl(std::span<const Scalar> coeffs) {
  int top = static_cast<int>(coeffs.size()) - 1;
  while (top >= 0 && coeffs[top] == Scalar(0)) --top;
  if (top <= 0) return {};
  // Zero roots are factored out exactly; the companion solver handles the rest.
  int low = 0;
  while (coeffs[low] == Scalar(0)) ++low;
  std::vector<std::complex<double>> out(low, std::complex<double>(0.0, 0.0));
  const int deg = top - low;
  if (deg == 0) return out;
  if (deg == 1) {
    out.emplace_back(-std::complex<double>(coeffs[low]) / std::complex<double>(coeffs[top]));
    return out;
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> c(deg + 1);
  for (int k = 0; k <= deg; ++k) c[k] = coeffs[low + k];
  Eigen::PolynomialSolver<Scalar, Eigen::Dynamic> solver;
  solver.compute(c);
  const auto& r = solver.roots();
  for (Eigen::Index i = 0; i < r.size(); ++i) out.emplace_back(r[i]);
  return out;
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots(std::span<const std::complex<double>> coeffs) {
  return roots_impl(coeffs);
}

std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs) {
  return roots_impl(coeffs);
}

double horner(std::span<const double> coeffs, double x) {
  double s = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * x + *it;
  return s;
}

std::complex<double> horner(std::span<const std::complex<double>> coeffs, std::complex<double> z) {
  std::complex<double> s = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * z + *it;
  return s;
}

std::vector<double> real_roots(std::span<const double> coeffs) {
  const auto all = polynomial_roots(coeffs);
  std::vector<double> deriv;
  for (std::size_t k = 1; k < coeffs.size(); ++k) deriv.push_back(k * coeffs[k]);

  auto magnitude = [&](double x) {
    double s = 0.0, xp = 1.0;
    for (double c : coeffs) {
      s += std::abs(c) * xp;
      xp *= std::abs(x);
    }
    return s;
  };

  std::vector<double> out;
  for (const auto& z : all) {
    if (std::abs(z.imag()) > 1e-5 * std::max(1.0, std::abs(z))) continue;
    double x = z.real();
    for (int it = 0; it < 60; ++it) {
      const double f = horner(coeffs, x);
      const double df = horner(deriv, x);
      if (f == 0.0 || df == 0.0) break;
      const double step = f / df;
      const double next = x - step;
      if (!std::isfinite(next)) break;
      // Only keep Newton steps that do not increase the residual.
      if (std::abs(horner(coeffs, next)) > std::abs(f)) break;
      x = next;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    if (std::abs(horner(coeffs, x)) > 1e-9 * magnitude(x)) continue;
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  std::vector<double> unique;
  for (double x : out) {
    if (unique.empty() || std::abs(x - unique.back()) > 1e-7 * std::max(1.0, std::abs(x))) {
      unique.push_back(x);
    }
  }
  return unique;
}

}  // namespace planks
