#include "planks/complexproj.hpp"

#include "planks/error.hpp"
#include "planks/optim.hpp"
#include "planks/roots.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace planks {

namespace {

constexpr std::uint64_t kLineSeed = 0xc0de'11fe'5eedULL;
constexpr std::size_t kMaxCandidates = 16;

using Monomials = std::map<std::vector<int>, Complex>;

std::vector<ComplexTerm> to_terms(const Monomials& m) {
  std::vector<ComplexTerm> out;
  for (const auto& [e, c] : m) {
    if (c != Complex(0.0)) out.push_back({e, c});
  }
  return out;
}

// Powers z_j^k for k <= n.
std::vector<std::vector<Complex>> power_table(const CVec& z, int n) {
  std::vector<std::vector<Complex>> pw(z.size(), std::vector<Complex>(n + 1, Complex(1.0)));
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    for (int k = 1; k <= n; ++k) pw[j][k] = pw[j][k - 1] * z[j];
  }
  return pw;
}

// sum_j a_j b_j, without the conjugation Eigen's dot() applies.
Complex bilinear(const CVec& a, const CVec& b) { return (a.array() * b.array()).sum(); }

// grad P / P, with the factored form used when available.
CVec log_gradient(const ComplexHomogPoly& poly, const CVec& z) {
  if (poly.is_linear_product()) {
    CVec g = CVec::Zero(poly.dim());
    for (const auto& c : poly.linear_factors()) g += c / bilinear(c, z);
    return g;
  }
  return poly.gradient(z) / poly.eval(z);
}

double log_abs(const ComplexHomogPoly& poly, const CVec& z) {
  if (poly.is_linear_product()) {
    double s = 0.0;
    for (const auto& c : poly.linear_factors()) s += std::log(std::abs(bilinear(c, z)));
    return s;
  }
  return std::log(std::abs(poly.eval(z)));
}

struct Weighted {
  const ComplexHomogPoly* poly;
  double weight;
};

std::vector<AscentResult> maximize_weighted(const std::vector<Weighted>& items, int dim, int starts,
                                            std::uint64_t seed) {
  if (starts < 1) throw InputError("need at least one start");
  const Objective obj{
      [&](const Vec& x) {
        const CVec z = to_complex(x);
        double s = 0.0;
        for (const auto& it : items) s += it.weight * log_abs(*it.poly, z);
        return std::isnan(s) ? -std::numeric_limits<double>::infinity() : s;
      },
      [&](const Vec& x) {
        const CVec z = to_complex(x);
        CVec q = CVec::Zero(dim);
        for (const auto& it : items) q += it.weight * log_gradient(*it.poly, z);
        Vec g(2 * dim);
        g.head(dim) = q.real();
        g.tail(dim) = -q.imag();
        return g;
      }};
  const auto results = multi_ascend(obj, sphere_starts(2 * dim, starts, seed), Domain::kSphere);
  auto near = near_maximizers(results);
  if (near.empty()) throw NumericalError("a polynomial vanishes on the whole sphere");
  if (near.size() > kMaxCandidates) near.resize(kMaxCandidates);
  return near;
}

// Exact unit zeros of a binary form, from the roots of P(w, 1) plus (1, 0)
// when the degree in w drops.
std::vector<CVec> binary_form_zeros(const std::vector<Complex>& coeffs_in_w) {
  std::vector<CVec> out;
  const auto roots = polynomial_roots(std::span<const Complex>(coeffs_in_w));
  for (const auto& w : roots) {
    CVec z(2);
    z << w, Complex(1.0);
    out.push_back(z.normalized());
  }
  if (coeffs_in_w.back() == Complex(0.0)) {
    CVec z(2);
    z << Complex(1.0), Complex(0.0);
    out.push_back(z);
  }
  return out;
}

// Newton projection of y onto Z(P) within the unit sphere of C^d.
std::optional<CVec> project_to_zero_set(const ComplexHomogPoly& poly, CVec y) {
  const double scale = poly.coeff_norm();
  for (int it = 0; it < 30; ++it) {
    y.normalize();
    const Complex v = poly.eval(y);
    const CVec g = poly.gradient(y);
    const CVec gt = g.conjugate() - y.dot(g.conjugate()) * y;
    const Complex denom = bilinear(g, gt);
    if (std::abs(denom) == 0.0) return std::nullopt;
    if (std::abs(v) <= 1e-14 * std::max(gt.norm(), 1e-300)) return y;
    y -= (v / denom) * gt;
  }
  y.normalize();
  if (std::abs(poly.eval(y)) <= 1e-10 * scale) return y;
  return std::nullopt;
}

CVec descend_toward(const ComplexHomogPoly& poly, const CVec& p, CVec z) {
  const auto d = p.size();
  double alpha = 0.5;
  for (int it = 0; it < 200; ++it) {
    const Complex h = p.dot(z);
    const CVec pa = std::abs(h) > 0.0 ? CVec(p * (h / std::abs(h))) : p;
    Eigen::MatrixXcd span(d, 2);
    span.col(0) = z;
    span.col(1) = poly.gradient(z).conjugate();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(span);
    const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, 2);
    const CVec step = pa - q * (q.adjoint() * pa);
    if (step.norm() < 1e-13) break;
    bool moved = false;
    for (int bt = 0; bt < 30; ++bt, alpha *= 0.5) {
      const auto y = project_to_zero_set(poly, z + alpha * step);
      if (y && std::abs(p.dot(*y)) > std::abs(p.dot(z)) + 1e-16) {
        z = *y;
        moved = true;
        alpha = std::min(1.0, 2.0 * alpha);
        break;
      }
    }
    if (!moved) break;
  }
  return z;
}

ComplexZeroDistance nearest_of(const CVec& p, const std::vector<CVec>& zeros) {
  ComplexZeroDistance out;
  for (const auto& z : zeros) {
    const double d = hermitian_distance(p, z);
    if (d < out.distance) {
      out.distance = d;
      out.witness = z;
    }
  }
  return out;
}

double score(const ComplexReport& r) {
  double s = std::numeric_limits<double>::infinity();
  for (const auto& it : r.items) s = std::min(s, it.distance - it.bound);
  return s;
}

ComplexItemReport item_report(const ComplexHomogPoly& poly, const CVec& p, double bound, double tol) {
  const auto zd = complex_zero_distance(poly, p);
  ComplexItemReport r;
  r.degree = poly.degree();
  r.distance = zd.distance;
  r.bound = bound;
  r.euclidean_distance = std::isfinite(zd.distance) ? std::sin(zd.distance) : kInfiniteDistance;
  r.passed = zd.distance >= bound - tol;
  r.nearest_zero = zd.witness;
  return r;
}

}  // namespace

ComplexHomogPoly::ComplexHomogPoly(int dim, std::vector<ComplexTerm> terms) : dim_(dim) {
  if (dim < 1) throw InputError("complex polynomial needs at least one variable");
  Monomials merged;
  int deg = -1;
  for (auto& t : terms) {
    if (static_cast<int>(t.exponents.size()) != dim) throw InputError("term exponent length differs from dim");
    int total = 0;
    for (int e : t.exponents) {
      if (e < 0) throw InputError("negative exponent");
      total += e;
    }
    if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag())) {
      throw InputError("non-finite coefficient");
    }
    if (t.coeff == Complex(0.0)) continue;
    if (deg >= 0 && total != deg) throw InputError("polynomial is not homogeneous");
    deg = total;
    merged[t.exponents] += t.coeff;
  }
  terms_ = to_terms(merged);
  if (terms_.empty()) throw InputError("polynomial is identically zero");
  degree_ = deg;
}

ComplexHomogPoly ComplexHomogPoly::product_of_linear(const std::vector<CVec>& forms) {
  if (forms.empty()) throw InputError("empty product of linear forms");
  const int d = static_cast<int>(forms.front().size());
  Monomials acc{{std::vector<int>(d, 0), Complex(1.0)}};
  for (const auto& c : forms) {
    if (c.size() != d) throw InputError("linear forms differ in dimension");
    if (c.norm() == 0.0) throw InputError("zero linear form");
    Monomials next;
    for (const auto& [e, v] : acc) {
      for (int j = 0; j < d; ++j) {
        if (c[j] == Complex(0.0)) continue;
        auto f = e;
        ++f[j];
        next[f] += v * c[j];
      }
    }
    acc = std::move(next);
  }
  ComplexHomogPoly p(d, to_terms(acc));
  p.factors_ = forms;
  return p;
}

Complex ComplexHomogPoly::eval(const CVec& z) const {
  if (z.size() != dim_) throw InputError("point and polynomial differ in dimension");
  if (!factors_.empty()) {
    Complex v(1.0);
    for (const auto& c : factors_) v *= bilinear(c, z);
    return v;
  }
  const auto pw = power_table(z, degree_);
  Complex s(0.0);
  for (const auto& t : terms_) {
    Complex m = t.coeff;
    for (int j = 0; j < dim_; ++j) m *= pw[j][t.exponents[j]];
    s += m;
  }
  return s;
}

CVec ComplexHomogPoly::gradient(const CVec& z) const {
  if (z.size() != dim_) throw InputError("point and polynomial differ in dimension");
  CVec g = CVec::Zero(dim_);
  if (!factors_.empty()) {
    const auto m = factors_.size();
    std::vector<Complex> vals(m), prefix(m + 1, Complex(1.0)), suffix(m + 1, Complex(1.0));
    for (std::size_t i = 0; i < m; ++i) vals[i] = bilinear(factors_[i], z);
    for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] * vals[i];
    for (std::size_t i = m; i-- > 0;) suffix[i] = suffix[i + 1] * vals[i];
    for (std::size_t i = 0; i < m; ++i) g += factors_[i] * (prefix[i] * suffix[i + 1]);
    return g;
  }
  const auto pw = power_table(z, degree_);
  for (const auto& t : terms_) {
    for (int j = 0; j < dim_; ++j) {
      if (t.exponents[j] == 0) continue;
      Complex m = t.coeff * static_cast<double>(t.exponents[j]);
      for (int l = 0; l < dim_; ++l) m *= pw[l][t.exponents[l] - (l == j ? 1 : 0)];
      g[j] += m;
    }
  }
  return g;
}

double ComplexHomogPoly::coeff_norm() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return s;
}

Complex cplx_eval(const ComplexHomogPoly& poly, const CVec& z) { return poly.eval(z); }

Vec to_real(const CVec& z) {
  Vec x(2 * z.size());
  x.head(z.size()) = z.real();
  x.tail(z.size()) = z.imag();
  return x;
}

CVec to_complex(const Vec& x) {
  const auto d = x.size() / 2;
  CVec z(d);
  for (Eigen::Index j = 0; j < d; ++j) z[j] = Complex(x[j], x[d + j]);
  return z;
}

double hermitian_distance(const CVec& p, const CVec& z) {
  const Complex h = p.dot(z);
  const double perp = (z - h * p).norm();
  return std::atan2(perp, std::abs(h));
}

WeightedSystem::WeightedSystem(std::vector<WeightedItem> items) : items_(std::move(items)) {
  if (items_.empty()) throw InputError("weighted system is empty");
  for (const auto& it : items_) {
    if (it.poly.dim() != items_.front().poly.dim()) throw InputError("weighted items differ in dimension");
    if (!(it.delta > 0.0) || !std::isfinite(it.delta)) throw InputError("weights must be positive");
    budget_ += it.delta * it.delta * it.poly.degree();
  }
  if (budget_ > 1.0 + 1e-12) throw InputError("sum of delta^2 deg P exceeds 1");
}

WeightedMaxResult maximize_weighted_log(const WeightedSystem& system, int starts, std::uint64_t seed) {
  std::vector<Weighted> items;
  for (const auto& it : system.items()) items.push_back({&it.poly, it.delta * it.delta});
  const auto near = maximize_weighted(items, system.dim(), starts, seed);
  WeightedMaxResult r{to_complex(near.front().point), near.front().value, {}};
  for (const auto& n : near) r.all_near_max.push_back(to_complex(n.point));
  return r;
}

ComplexZeroDistance complex_zero_distance(const ComplexHomogPoly& poly, const CVec& p_in, int budget) {
  if (p_in.size() != poly.dim()) throw InputError("point and polynomial differ in dimension");
  const double pn = p_in.norm();
  if (!(pn > 0.0)) throw InputError("point must be nonzero");
  const CVec p = p_in / pn;
  const int d = poly.dim();

  if (poly.is_linear_product()) {
    ComplexZeroDistance out;
    for (const auto& c : poly.linear_factors()) {
      // Zero set of c.z is the Hermitian complement of conj(c).
      const CVec n = c.conjugate().normalized();
      const Complex h = n.dot(p);
      const double dist = std::asin(std::min(1.0, std::abs(h)));
      if (dist < out.distance) {
        out.distance = dist;
        CVec z = p - h * n;
        if (z.norm() < 1e-14) {
          Eigen::MatrixXcd span(d, 1);
          span.col(0) = n;
          Eigen::HouseholderQR<Eigen::MatrixXcd> qr(span);
          z = (qr.householderQ() * Eigen::MatrixXcd::Identity(d, d)).col(1);
        }
        out.witness = z.normalized();
      }
    }
    return out;
  }

  if (d == 1) return {};
  if (std::abs(poly.eval(p)) <= 1e-14 * poly.coeff_norm()) return {0.0, p};

  const int n = poly.degree();
  if (d == 2) {
    std::vector<Complex> cw(n + 1, Complex(0.0));
    for (const auto& t : poly.terms()) cw[t.exponents[0]] += t.coeff;
    return nearest_of(p, binary_form_zeros(cw));
  }

  // Restrict to complex lines {s p + t w}: P(s p + t w) is a binary form
  // whose coefficients come from a DFT over n + 1 sample points.
  Eigen::MatrixXcd span(d, 1);
  span.col(0) = p;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(span);
  const Eigen::MatrixXcd basis = (qr.householderQ() * Eigen::MatrixXcd::Identity(d, d)).rightCols(d - 1);
  const auto dirs = sphere_starts(2 * (d - 1), std::max(1, budget), kLineSeed);
  std::vector<ComplexZeroDistance> found(dirs.size());
  parallel_for(static_cast<int>(dirs.size()), [&](int i) {
    const CVec w = basis * to_complex(dirs[i]);
    const int m = n + 1;
    std::vector<Complex> samples(m), cw(m, Complex(0.0));
    for (int k = 0; k < m; ++k) {
      const Complex om = std::polar(1.0, 2.0 * std::numbers::pi * k / m);
      samples[k] = poly.eval(om * p + w);
    }
    for (int a = 0; a < m; ++a) {
      for (int k = 0; k < m; ++k) cw[a] += samples[k] * std::polar(1.0, -2.0 * std::numbers::pi * a * k / m);
      cw[a] /= static_cast<double>(m);
    }
    cw[n] = poly.eval(p);
    std::vector<CVec> zeros;
    for (const auto& z2 : binary_form_zeros(cw)) {
      const CVec z = (z2[0] * p + z2[1] * w).normalized();
      zeros.push_back(z);
      if (auto y = project_to_zero_set(poly, z)) zeros.push_back(descend_toward(poly, p, *y));
    }
    found[i] = nearest_of(p, zeros);
  });
  ComplexZeroDistance best;
  for (auto& z : found) {
    if (z.distance < best.distance) best = std::move(z);
  }
  return best;
}

ComplexReport verify_complex_distance(const ComplexHomogPoly& poly, std::uint64_t seed, int starts, double tol) {
  const auto near = maximize_weighted({{&poly, 1.0}}, poly.dim(), starts, seed);
  const double bound = std::asin(1.0 / std::sqrt(static_cast<double>(poly.degree())));
  std::optional<ComplexReport> best;
  for (const auto& cand : near) {
    ComplexReport r;
    r.maximizer = to_complex(cand.point);
    r.log_value = cand.value;
    r.items.push_back(item_report(poly, r.maximizer, bound, tol));
    r.passed = r.items.front().passed;
    if (!best || score(r) > score(*best)) best = std::move(r);
  }
  if (poly.dim() == 2 && poly.degree() >= 2 && std::isfinite(best->items.front().distance)) {
    best->cp1_radius = std::tan(best->items.front().distance);
  }
  return *best;
}

Cp1RadiusResult cp1_radius_check(const ComplexHomogPoly& poly, const CVec& zero_in, std::uint64_t seed,
                                 int starts) {
  if (poly.dim() != 2) throw InputError("chart radius check needs two complex variables");
  const int n = poly.degree();
  if (n < 2) throw InputError("chart radius check needs degree at least 2");
  if (zero_in.size() != 2 || !(zero_in.norm() > 0.0)) throw InputError("zero must be a nonzero point of C^2");
  const CVec z0 = zero_in.normalized();
  if (std::abs(poly.eval(z0)) > 1e-8 * poly.coeff_norm()) throw InputError("given point is not a zero");
  if (starts < 1) throw InputError("need at least one start");

  CVec u(2);
  u << -std::conj(z0[1]), std::conj(z0[0]);
  const auto chart = [&](const Vec& w) { return CVec(z0 + Complex(w[0], w[1]) * u); };
  const Objective obj{
      [&](const Vec& w) {
        const double v = std::log(std::abs(poly.eval(chart(w)))) - 0.5 * n * std::log1p(w.squaredNorm());
        return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
      },
      [&](const Vec& w) {
        const CVec z = chart(w);
        const Complex q = bilinear(poly.gradient(z), u) / poly.eval(z);
        const double s = n / (1.0 + w.squaredNorm());
        Vec g(2);
        g << q.real() - s * w[0], -q.imag() - s * w[1];
        return g;
      }};

  std::vector<Vec> chart_starts;
  for (const auto& x : sphere_starts(4, starts, seed)) {
    const CVec z = to_complex(x);
    const Complex den = z0.dot(z);
    if (std::abs(den) < 1e-3) continue;
    const Complex w = u.dot(z) / den;
    chart_starts.push_back((Vec(2) << w.real(), w.imag()).finished());
  }
  if (chart_starts.empty()) chart_starts.push_back(Vec::Constant(2, 1.0));
  const auto near = near_maximizers(multi_ascend(obj, chart_starts, Domain::kPlane));
  if (near.empty()) throw NumericalError("polynomial vanishes on the projective line");

  Cp1RadiusResult r;
  r.bound = 1.0 / (n - 1);
  const double at_infinity = std::log(std::abs(poly.eval(u)));
  if (at_infinity > near.front().value + 1e-9) {
    r.a = kInfiniteDistance;
    r.maximizer = u;
  } else {
    r.a = kInfiniteDistance;
    for (const auto& c : near) {
      const double a = c.point.norm();
      if (a < r.a) {
        r.a = a;
        r.maximizer = chart(c.point).normalized();
      }
    }
  }
  r.passed = r.a * r.a >= r.bound - 1e-8;
  return r;
}

ComplexReport verify_weighted_distances(const WeightedSystem& system, std::uint64_t seed, int starts, double tol) {
  std::vector<Weighted> items;
  for (const auto& it : system.items()) items.push_back({&it.poly, it.delta * it.delta});
  const auto near = maximize_weighted(items, system.dim(), starts, seed);
  std::optional<ComplexReport> best;
  for (const auto& cand : near) {
    ComplexReport r;
    r.maximizer = to_complex(cand.point);
    r.log_value = cand.value;
    r.passed = true;
    for (const auto& it : system.items()) {
      r.items.push_back(item_report(it.poly, r.maximizer, std::asin(std::min(1.0, it.delta)), tol));
      r.passed = r.passed && r.items.back().passed;
    }
    if (!best || score(r) > score(*best)) best = std::move(r);
  }
  return *best;
}

}  // namespace planks
