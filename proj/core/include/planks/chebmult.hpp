#pragma once

#include <vector>

namespace planks {

/// Chebyshev polynomial of the first kind, T_k(x): cos(k arccos x) on
/// [-1, 1] and the cosh form outside.
double cheb_eval(int k, double x);

/// T_k by the three-term recurrence; the reference used in tests and tables.
double cheb_eval_recurrence(int k, double x);

/// Positive zeros t_{1,k} < ... < t_{floor(k/2),k} of T_k. Requires k >= 2.
std::vector<double> cheb_positive_zeros(int k);

/// Finite product prod_{i = floor(n/2)+1}^{floor(k/2)} (1 - (x / (k t_{i,k}))^2).
/// Requires 0 < n < k with k = n (mod 2).
double g_nk_eval(int n, int k, double x);

/// Tail of the cosine (n even) or sine (n odd) product expansion with the
/// first floor(n/2) factors removed, evaluated in closed form. Removable
/// singularities are handled by local series, so the function is total.
double g_n_eval(int n, double x);

/// d/dx log g_n(x); finite wherever g_n(x) != 0.
double g_n_log_derivative(int n, double x);

/// G_n(x) = g_n(n pi x / 2): even, equal to 1 at 0, first zero at 1 + 1/n.
double G_n_eval(int n, double x);

/// d/dx log G_n(x).
double G_n_log_derivative(int n, double x);

/// lim_{x -> 0} (d/dx log G_n(x)) / x, i.e. the second derivative of log G_n at 0.
double G_n_log_curvature_at_zero(int n);

/// Multiplier attached to a degree-n polynomial.
struct ChebMultiplier {
  int n = 1;
  bool even = false;
  /// Points m/n in (0, 1 + 1/n] where a cancelled closed-form denominator
  /// factor vanishes (removable singularities of G_n).
  std::vector<double> poles;

  explicit ChebMultiplier(int degree);
  double operator()(double x) const { return G_n_eval(n, x); }
};

struct ConvergenceRow {
  int k = 0;
  double cheb_error = 0.0;  // sup |(-1)^{floor(k/2)} T_k(x/k) - cos x or sin x|
  double product_error = 0.0;  // sup |g_{n,k}(x) - g_n(x)|
};

struct ConvergenceReport {
  int n = 0;
  double half_width = 0.0;
  std::vector<ConvergenceRow> rows;
};

/// Sup errors on a 2048-point grid over [-X, X] (the single point {0} when
/// X = 0). Every k must satisfy k > n and k = n (mod 2).
ConvergenceReport convergence_report(int n, const std::vector<int>& ks, double half_width);

}  // namespace planks
