#include "planks/chebmult.hpp"

#include "planks/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace planks {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kWindow = 1e-3;

// Zero of the i-th cancelled factor of g_n (i = 1..floor(n/2)).
double cancelled_root(int n, int i) {
  return (n % 2 == 0) ? (2 * i - 1) * kPi / 2.0 : i * kPi;
}

// sin(h)/h by its Taylor series; |h| <= kWindow.
double sinc_series(double h) {
  const double h2 = h * h;
  return 1.0 - h2 / 6.0 * (1.0 - h2 / 20.0 * (1.0 - h2 / 42.0 * (1.0 - h2 / 72.0 * (1.0 - h2 / 110.0))));
}

// cot(h) - 1/h by its Taylor series; |h| <= kWindow.
double cot_minus_inverse_series(double h) {
  const double h2 = h * h;
  return -h / 3.0 - h * h2 / 45.0 - 2.0 * h * h2 * h2 / 945.0 - h * h2 * h2 * h2 / 4725.0;
}

double sinc(double x) { return std::abs(x) < kWindow ? sinc_series(x) : std::sin(x) / x; }

void check_parity(int n, int k) {
  if (n <= 0) throw InputError("n must be positive");
  if (k <= n) throw InputError("k must exceed n");
  if ((k - n) % 2 != 0) throw InputError("n and k must have the same parity");
}

}  // namespace

double cheb_eval(int k, double x) {
  if (k < 0) throw InputError("Chebyshev degree must be nonnegative");
  // cos(k pi / 2) leaves ~1e-16 residue where the exact value is 0
  if (x == 0.0) return k % 2 ? 0.0 : ((k / 2) % 2 ? -1.0 : 1.0);
  if (std::abs(x) <= 1.0) return std::cos(k * std::acos(x));
  const double v = std::cosh(k * std::acosh(std::abs(x)));
  return (x < 0.0 && k % 2 == 1) ? -v : v;
}

double cheb_eval_recurrence(int k, double x) {
  if (k == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (int j = 1; j < k; ++j) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> cheb_positive_zeros(int k) {
  if (k < 2) throw InputError("positive Chebyshev zeros need k >= 2");
  const int half = k / 2;
  std::vector<double> t(half);
  for (int i = 1; i <= half; ++i) {
    t[i - 1] = std::cos(kPi / (2.0 * k) + (half - i) * kPi / k);
  }
  return t;
}

double g_nk_eval(int n, int k, double x) {
  check_parity(n, k);
  const auto t = cheb_positive_zeros(k);
  std::vector<double> factors;
  for (int i = n / 2 + 1; i <= k / 2; ++i) {
    const double r = x / (k * t[i - 1]);
    factors.push_back(1.0 - r * r);
  }
  std::sort(factors.begin(), factors.end(),
            [](double a, double b) { return std::abs(1.0 - a) < std::abs(1.0 - b); });
  double p = 1.0;
  for (double f : factors) p *= f;
  return p;
}

double g_n_eval(int n, double x) {
  if (n <= 0) throw InputError("n must be positive");
  x = std::abs(x);
  const int m = n / 2;
  const bool even = n % 2 == 0;

  int window = 0;  // index of the cancelled factor whose root is within kWindow
  for (int i = 1; i <= m; ++i) {
    if (std::abs(x - cancelled_root(n, i)) < kWindow) window = i;
  }

  double numer_over_window;
  if (window == 0) {
    numer_over_window = even ? std::cos(x) : sinc(x);
  } else {
    const double x0 = cancelled_root(n, window);
    const double h = x - x0;
    // The vanishing factor 1 - (x/x0)^2 equals (-h/x0)(2 + h/x0).
    if (even) {
      // cos(x0 + h) = -sin(x0) sin(h)
      numer_over_window = std::sin(x0) * x0 * sinc_series(h) / (2.0 + h / x0);
    } else {
      // sin(x0 + h) / x = cos(x0) sin(h) / x
      numer_over_window = -std::cos(x0) * x0 * sinc_series(h) / (x * (2.0 + h / x0));
    }
  }

  std::vector<double> factors;
  for (int i = 1; i <= m; ++i) {
    if (i == window) continue;
    const double r = x / cancelled_root(n, i);
    factors.push_back(1.0 - r * r);
  }
  std::sort(factors.begin(), factors.end(),
            [](double a, double b) { return std::abs(1.0 - a) < std::abs(1.0 - b); });
  double denom = 1.0;
  for (double f : factors) denom *= f;
  return numer_over_window / denom;
}

double g_n_log_derivative(int n, double x) {
  if (n <= 0) throw InputError("n must be positive");
  const double sign = x < 0.0 ? -1.0 : 1.0;
  x = std::abs(x);
  const int m = n / 2;
  const bool even = n % 2 == 0;

  int window = 0;
  for (int i = 1; i <= m; ++i) {
    if (std::abs(x - cancelled_root(n, i)) < kWindow) window = i;
  }

  double s = 0.0;
  if (window == 0) {
    if (even) {
      s = -std::tan(x);
    } else {
      s = std::abs(x) < kWindow ? cot_minus_inverse_series(x) : 1.0 / std::tan(x) - 1.0 / x;
    }
  } else {
    const double x0 = cancelled_root(n, window);
    const double h = x - x0;
    // -tan(x0+h) = cot h for even n, cot(x0+h) = cot h for odd n; paired with
    // 2x/(x0^2 - x^2) = -1/h - 1/(2 x0 + h) from the cancelled factor.
    s = cot_minus_inverse_series(h) - 1.0 / (2.0 * x0 + h);
    if (!even) s -= 1.0 / x;
  }
  for (int i = 1; i <= m; ++i) {
    if (i == window) continue;
    const double xi = cancelled_root(n, i);
    s += 2.0 * x / (xi * xi - x * x);
  }
  return sign * s;
}

double G_n_eval(int n, double x) { return g_n_eval(n, n * kPi * x / 2.0); }

double G_n_log_derivative(int n, double x) {
  const double scale = n * kPi / 2.0;
  return scale * g_n_log_derivative(n, scale * x);
}

double G_n_log_curvature_at_zero(int n) {
  if (n <= 0) throw InputError("n must be positive");
  // (log cos)''(0) = -1, (log sinc)''(0) = -1/3, each removed factor adds 2/x_i^2.
  double c = (n % 2 == 0) ? -1.0 : -1.0 / 3.0;
  for (int i = 1; i <= n / 2; ++i) {
    const double xi = cancelled_root(n, i);
    c += 2.0 / (xi * xi);
  }
  const double scale = n * kPi / 2.0;
  return scale * scale * c;
}

ChebMultiplier::ChebMultiplier(int degree) : n(degree), even(degree % 2 == 0) {
  if (degree <= 0) throw InputError("multiplier degree must be positive");
  // Cancelled roots x_i map to G_n arguments 2 x_i / (n pi) = (2i-1)/n or 2i/n.
  for (int i = 1; i <= n / 2; ++i) poles.push_back(2.0 * cancelled_root(n, i) / (n * kPi));
}

ConvergenceReport convergence_report(int n, const std::vector<int>& ks, double half_width) {
  if (half_width < 0.0) throw InputError("half width must be nonnegative");
  for (int k : ks) check_parity(n, k);
  ConvergenceReport rep;
  rep.n = n;
  rep.half_width = half_width;

  std::vector<double> grid;
  if (half_width == 0.0) {
    grid = {0.0};
  } else {
    constexpr int kPoints = 2048;
    for (int i = 0; i < kPoints; ++i) grid.push_back(-half_width + 2.0 * half_width * i / (kPoints - 1));
  }

  for (int k : ks) {
    ConvergenceRow row;
    row.k = k;
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    for (double x : grid) {
      const double target = (k % 2 == 0) ? std::cos(x) : std::sin(x);
      row.cheb_error = std::max(row.cheb_error, std::abs(sign * cheb_eval(k, x / k) - target));
      row.product_error = std::max(row.product_error, std::abs(g_nk_eval(n, k, x) - g_n_eval(n, x)));
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace planks
