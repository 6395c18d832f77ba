#include "planks/polycore.hpp"

#include "planks/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>

namespace planks {

struct MultiPoly::Expansion {
  std::once_flag once;
  std::vector<Term> terms;
  std::vector<int> max_exp;
};

namespace {

std::vector<Term> canonical_terms(int dim, std::vector<Term> terms) {
  std::map<std::vector<int>, double> acc;
  for (auto& t : terms) {
    if (static_cast<int>(t.exponents.size()) != dim) {
      throw InputError("term exponent vector has length " + std::to_string(t.exponents.size()) +
                       ", expected " + std::to_string(dim));
    }
    for (int e : t.exponents) {
      if (e < 0) throw InputError("negative exponent in polynomial term");
    }
    if (!std::isfinite(t.coeff)) throw InputError("non-finite polynomial coefficient");
    acc[t.exponents] += t.coeff;
  }
  std::vector<Term> out;
  for (auto& [e, c] : acc) {
    if (c != 0.0) out.push_back({e, c});
  }
  return out;
}

std::vector<int> max_exponents(int dim, const std::vector<Term>& terms) {
  std::vector<int> m(dim, 0);
  for (const auto& t : terms) {
    for (int j = 0; j < dim; ++j) m[j] = std::max(m[j], t.exponents[j]);
  }
  return m;
}

int total_degree(const Term& t) {
  int s = 0;
  for (int e : t.exponents) s += e;
  return s;
}

// powers[j][e] = x_j^e
std::vector<std::vector<double>> power_table(const Vec& x, const std::vector<int>& max_exp) {
  std::vector<std::vector<double>> p(max_exp.size());
  for (std::size_t j = 0; j < max_exp.size(); ++j) {
    p[j].resize(max_exp[j] + 1);
    p[j][0] = 1.0;
    for (int e = 1; e <= max_exp[j]; ++e) p[j][e] = p[j][e - 1] * x[static_cast<Eigen::Index>(j)];
  }
  return p;
}

template <typename T>
std::vector<T> convolve(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out(a.size() + b.size() - 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == T(0)) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

AffineForm::AffineForm(Vec normal, double offset) : normal_(std::move(normal)), offset_(offset) {
  const double len = normal_.norm();
  if (!(len > 0.0) || !std::isfinite(len)) throw InputError("affine form needs a nonzero normal");
  if (!std::isfinite(offset)) throw InputError("affine form offset is not finite");
  normal_ /= len;
  offset_ /= len;
}

CirclePlane::CirclePlane(Vec u, Vec v, double radius, std::optional<Vec> center)
    : u_(std::move(u)), v_(std::move(v)), radius_(radius) {
  if (u_.size() != v_.size()) throw InputError("circle plane vectors differ in dimension");
  if (!(radius_ > 0.0)) throw InputError("circle radius must be positive");
  if (std::abs(u_.norm() - 1.0) > 1e-12 || std::abs(v_.norm() - 1.0) > 1e-12 ||
      std::abs(u_.dot(v_)) > 1e-12) {
    throw InputError("circle plane vectors must be orthonormal");
  }
  center_ = center.value_or(Vec::Zero(u_.size()));
  if (center_.size() != u_.size()) throw InputError("circle center has wrong dimension");
}

CirclePlane CirclePlane::through(const Vec& p, const Vec& q) {
  Vec u = p.normalized();
  Vec w = q - q.dot(u) * u;
  const double len = w.norm();
  if (!(len > 1e-14)) throw InputError("points do not span a plane");
  Vec v = w / len;
  // One re-orthogonalization pass keeps <u, v> at round-off level.
  v -= v.dot(u) * u;
  v.normalize();
  return CirclePlane(u, v);
}

Vec CirclePlane::at(double theta) const {
  return center_ + radius_ * (std::cos(theta) * u_ + std::sin(theta) * v_);
}

MultiPoly::MultiPoly(int dim, std::vector<Term> terms) : dim_(dim) {
  if (dim < 1) throw InputError("polynomial dimension must be positive");
  auto canon = canonical_terms(dim, std::move(terms));
  if (canon.empty()) throw InputError("polynomial is identically zero");
  for (const auto& t : canon) degree_ = std::max(degree_, total_degree(t));
  expansion_ = std::make_shared<Expansion>();
  expansion_->max_exp = max_exponents(dim, canon);
  expansion_->terms = std::move(canon);
  std::call_once(expansion_->once, [] {});
}

MultiPoly MultiPoly::product_of(std::span<const AffineForm> forms) {
  if (forms.empty()) throw InputError("product of affine forms needs at least one form");
  const int dim = forms.front().dim();
  for (const auto& f : forms) {
    if (f.dim() != dim) throw InputError("affine forms differ in dimension");
  }
  MultiPoly p;
  p.dim_ = dim;
  p.degree_ = static_cast<int>(forms.size());
  p.factors_.assign(forms.begin(), forms.end());
  p.expansion_ = std::make_shared<Expansion>();
  return p;
}

const std::vector<Term>& MultiPoly::terms() const {
  std::call_once(expansion_->once, [this] {
    std::map<std::vector<int>, double> acc;
    acc[std::vector<int>(dim_, 0)] = 1.0;
    for (const auto& f : factors_) {
      std::map<std::vector<int>, double> next;
      for (const auto& [e, c] : acc) {
        if (f.offset() != 0.0) next[e] -= c * f.offset();
        for (int j = 0; j < dim_; ++j) {
          const double a = f.normal()[j];
          if (a == 0.0) continue;
          auto e2 = e;
          ++e2[j];
          next[e2] += c * a;
        }
      }
      acc = std::move(next);
    }
    std::vector<Term> out;
    for (auto& [e, c] : acc) {
      if (c != 0.0) out.push_back({e, c});
    }
    expansion_->max_exp = max_exponents(dim_, out);
    expansion_->terms = std::move(out);
  });
  return expansion_->terms;
}

void MultiPoly::check_dim(const Vec& x) const {
  if (x.size() != dim_) {
    throw InputError("point has dimension " + std::to_string(x.size()) + ", polynomial has " +
                     std::to_string(dim_));
  }
}

double MultiPoly::eval(const Vec& x) const {
  check_dim(x);
  if (is_affine_product()) {
    double p = 1.0;
    for (const auto& f : factors_) p *= f(x);
    return p;
  }
  const auto pw = power_table(x, expansion_->max_exp);
  double s = 0.0;
  for (const auto& t : expansion_->terms) {
    double m = t.coeff;
    for (int j = 0; j < dim_; ++j) m *= pw[j][t.exponents[j]];
    s += m;
  }
  return s;
}

Vec MultiPoly::gradient(const Vec& x) const {
  check_dim(x);
  Vec g = Vec::Zero(dim_);
  if (is_affine_product()) {
    const std::size_t m = factors_.size();
    std::vector<double> val(m), prefix(m + 1, 1.0), suffix(m + 1, 1.0);
    for (std::size_t i = 0; i < m; ++i) val[i] = factors_[i](x);
    for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] * val[i];
    for (std::size_t i = m; i-- > 0;) suffix[i] = suffix[i + 1] * val[i];
    for (std::size_t i = 0; i < m; ++i) g += (prefix[i] * suffix[i + 1]) * factors_[i].normal();
    return g;
  }
  const auto pw = power_table(x, expansion_->max_exp);
  for (const auto& t : expansion_->terms) {
    for (int j = 0; j < dim_; ++j) {
      const int ej = t.exponents[j];
      if (ej == 0) continue;
      double m = t.coeff * ej;
      for (int k = 0; k < dim_; ++k) m *= (k == j) ? pw[k][ej - 1] : pw[k][t.exponents[k]];
      g[j] += m;
    }
  }
  return g;
}

double MultiPoly::log_abs(const Vec& x) const {
  check_dim(x);
  if (is_affine_product()) {
    double s = 0.0;
    for (const auto& f : factors_) s += std::log(std::abs(f(x)));
    return s;
  }
  return std::log(std::abs(eval(x)));
}

Vec MultiPoly::log_abs_gradient(const Vec& x) const {
  check_dim(x);
  if (is_affine_product()) {
    Vec g = Vec::Zero(dim_);
    for (const auto& f : factors_) g += f.normal() / f(x);
    return g;
  }
  return gradient(x) / eval(x);
}

MultiPoly MultiPoly::doubled() const {
  if (is_affine_product()) {
    std::vector<AffineForm> forms;
    for (int half = 0; half < 2; ++half) {
      for (const auto& f : factors_) {
        Vec a = Vec::Zero(2 * dim_);
        a.segment(half * dim_, dim_) = f.normal();
        forms.emplace_back(a, f.offset());
      }
    }
    return product_of(forms);
  }
  std::vector<Term> out;
  const auto& ts = terms();
  for (const auto& s : ts) {
    for (const auto& t : ts) {
      Term u;
      u.exponents = s.exponents;
      u.exponents.insert(u.exponents.end(), t.exponents.begin(), t.exponents.end());
      u.coeff = s.coeff * t.coeff;
      out.push_back(std::move(u));
    }
  }
  return MultiPoly(2 * dim_, std::move(out));
}

double eval(const MultiPoly& poly, const Vec& point) { return poly.eval(point); }

Vec gradient(const MultiPoly& poly, const Vec& point) { return poly.gradient(point); }

MultiPoly product_of_affine_forms(std::span<const AffineForm> forms) {
  return MultiPoly::product_of(forms);
}

TrigPoly restrict_to_circle(const MultiPoly& poly, const CirclePlane& plane) {
  const int d = poly.dim();
  if (plane.dim() != d) throw InputError("circle plane dimension does not match polynomial");
  const double r = plane.radius();
  // Fourier coefficients (z^{-1}, z^0, z^1) of each coordinate along the circle.
  auto coordinate = [&](const Vec& a, double shift) {
    const double cu = r * a.dot(plane.u());
    const double cv = r * a.dot(plane.v());
    return std::vector<Complex>{Complex(cu / 2.0, cv / 2.0), Complex(a.dot(plane.center()) - shift),
                                Complex(cu / 2.0, -cv / 2.0)};
  };

  std::vector<Complex> total;
  if (poly.is_affine_product()) {
    total = {Complex(1.0)};
    for (const auto& f : poly.factors()) total = convolve(total, coordinate(f.normal(), f.offset()));
  } else {
    const int n = poly.degree();
    total.assign(2 * n + 1, Complex(0.0));
    std::vector<std::vector<std::vector<Complex>>> powers(d);
    for (int j = 0; j < d; ++j) {
      int top = 0;
      for (const auto& t : poly.terms()) top = std::max(top, t.exponents[j]);
      const auto xj = coordinate(Vec::Unit(d, j), 0.0);
      powers[j].push_back({Complex(1.0)});
      for (int e = 1; e <= top; ++e) powers[j].push_back(convolve(powers[j].back(), xj));
    }
    for (const auto& t : poly.terms()) {
      std::vector<Complex> m{Complex(t.coeff)};
      for (int j = 0; j < d; ++j) {
        if (t.exponents[j] > 0) m = convolve(m, powers[j][t.exponents[j]]);
      }
      // m holds harmonics -deg..deg of this term; centre it in `total`.
      const int deg = static_cast<int>(m.size() - 1) / 2;
      for (int k = -deg; k <= deg; ++k) total[n + k] += m[deg + k];
    }
  }
  return TrigPoly::from_fourier(total);
}

UniPoly restrict_to_line(const MultiPoly& poly, const Vec& origin, const Vec& direction) {
  const int d = poly.dim();
  if (origin.size() != d || direction.size() != d) {
    throw InputError("line dimension does not match polynomial");
  }
  if (poly.is_affine_product()) {
    UniPoly out{1.0};
    for (const auto& f : poly.factors()) {
      out = convolve(out, UniPoly{f(origin), f.normal().dot(direction)});
    }
    return out;
  }
  UniPoly out(poly.degree() + 1, 0.0);
  std::vector<std::vector<UniPoly>> powers(d);
  for (int j = 0; j < d; ++j) {
    int top = 0;
    for (const auto& t : poly.terms()) top = std::max(top, t.exponents[j]);
    powers[j].push_back({1.0});
    for (int e = 1; e <= top; ++e) {
      powers[j].push_back(convolve(powers[j].back(), UniPoly{origin[j], direction[j]}));
    }
  }
  for (const auto& t : poly.terms()) {
    UniPoly m{t.coeff};
    for (int j = 0; j < d; ++j) {
      if (t.exponents[j] > 0) m = convolve(m, powers[j][t.exponents[j]]);
    }
    for (std::size_t k = 0; k < m.size(); ++k) out[k] += m[k];
  }
  return out;
}

}  // namespace planks
