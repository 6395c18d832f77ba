#include "planks/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace planks {

namespace {
constexpr double kTrimRelTol = 1e-14;
}

TrigPoly::TrigPoly(double a0, std::vector<std::pair<double, double>> coeffs)
    : a0_(a0), coeffs_(std::move(coeffs)) {
  trim();
}

void TrigPoly::trim() {
  const double scale = coeff_scale();
  const double cut = kTrimRelTol * scale;
  while (!coeffs_.empty()) {
    const auto& [a, b] = coeffs_.back();
    if (std::abs(a) > cut || std::abs(b) > cut) break;
    coeffs_.pop_back();
  }
}

TrigPoly TrigPoly::from_fourier(std::span<const std::complex<double>> c) {
  const int n = static_cast<int>(c.size() - 1) / 2;
  std::vector<std::pair<double, double>> ab(n);
  for (int k = 1; k <= n; ++k) {
    const auto ck = c[n + k];
    ab[k - 1] = {2.0 * ck.real(), -2.0 * ck.imag()};
  }
  return TrigPoly(c[n].real(), std::move(ab));
}

TrigPoly TrigPoly::cosine(int n, double amplitude) {
  if (n == 0) return TrigPoly(amplitude, {});
  std::vector<std::pair<double, double>> ab(n, {0.0, 0.0});
  ab[n - 1].first = amplitude;
  return TrigPoly(0.0, std::move(ab));
}

TrigPoly TrigPoly::sine(int n, double amplitude) {
  std::vector<std::pair<double, double>> ab(n, {0.0, 0.0});
  if (n > 0) ab[n - 1].second = amplitude;
  return TrigPoly(0.0, std::move(ab));
}

double TrigPoly::operator()(double theta) const {
  double s = a0_;
  for (int k = 1; k <= degree(); ++k) {
    const auto& [a, b] = coeffs_[k - 1];
    s += a * std::cos(k * theta) + b * std::sin(k * theta);
  }
  return s;
}

double TrigPoly::derivative_at(int order, double theta) const {
  if (order == 0) return (*this)(theta);
  // d^j/dtheta^j cos(k theta) = k^j cos(k theta + j pi/2)
  const double shift = order * std::numbers::pi / 2.0;
  double s = 0.0;
  for (int k = 1; k <= degree(); ++k) {
    const auto& [a, b] = coeffs_[k - 1];
    const double kj = std::pow(static_cast<double>(k), order);
    s += kj * (a * std::cos(k * theta + shift) + b * std::sin(k * theta + shift));
  }
  return s;
}

TrigPoly TrigPoly::derivative() const {
  std::vector<std::pair<double, double>> ab(coeffs_.size());
  for (int k = 1; k <= degree(); ++k) {
    const auto& [a, b] = coeffs_[k - 1];
    ab[k - 1] = {k * b, -k * a};
  }
  return TrigPoly(0.0, std::move(ab));
}

TrigPoly TrigPoly::shifted(double phi) const {
  std::vector<std::pair<double, double>> ab(coeffs_.size());
  for (int k = 1; k <= degree(); ++k) {
    const auto& [a, b] = coeffs_[k - 1];
    const double c = std::cos(k * phi), s = std::sin(k * phi);
    // a cos(k(t+phi)) + b sin(k(t+phi))
    ab[k - 1] = {a * c + b * s, b * c - a * s};
  }
  return TrigPoly(a0_, std::move(ab));
}

bool TrigPoly::is_zero() const { return coeffs_.empty() && a0_ == 0.0; }

double TrigPoly::coeff_scale() const {
  double m = std::abs(a0_);
  for (const auto& [a, b] : coeffs_) m = std::max({m, std::abs(a), std::abs(b)});
  return m;
}

double TrigPoly::sup_norm_estimate() const {
  const int samples = 32 * (degree() + 1);
  double m = 0.0;
  for (int i = 0; i < samples; ++i) {
    m = std::max(m, std::abs((*this)(2.0 * std::numbers::pi * i / samples)));
  }
  return m;
}

std::vector<std::complex<double>> TrigPoly::fourier() const {
  const int n = degree();
  std::vector<std::complex<double>> c(2 * n + 1);
  c[n] = a0_;
  for (int k = 1; k <= n; ++k) {
    const auto& [a, b] = coeffs_[k - 1];
    c[n + k] = {a / 2.0, -b / 2.0};
    c[n - k] = {a / 2.0, b / 2.0};
  }
  return c;
}

TrigPoly TrigPoly::operator+(const TrigPoly& other) const {
  const int n = std::max(degree(), other.degree());
  std::vector<std::pair<double, double>> ab(n, {0.0, 0.0});
  for (int k = 0; k < degree(); ++k) {
    ab[k].first += coeffs_[k].first;
    ab[k].second += coeffs_[k].second;
  }
  for (int k = 0; k < other.degree(); ++k) {
    ab[k].first += other.coeffs_[k].first;
    ab[k].second += other.coeffs_[k].second;
  }
  return TrigPoly(a0_ + other.a0_, std::move(ab));
}

TrigPoly TrigPoly::operator*(double s) const {
  auto ab = coeffs_;
  for (auto& [a, b] : ab) {
    a *= s;
    b *= s;
  }
  return TrigPoly(a0_ * s, std::move(ab));
}

TrigPoly TrigPoly::operator*(const TrigPoly& other) const {
  const auto f = fourier();
  const auto g = other.fourier();
  const int n = degree(), m = other.degree();
  std::vector<std::complex<double>> h(2 * (n + m) + 1);
  for (int i = 0; i < 2 * n + 1; ++i) {
    for (int j = 0; j < 2 * m + 1; ++j) h[i + j] += f[i] * g[j];
  }
  return from_fourier(h);
}

}  // namespace planks
