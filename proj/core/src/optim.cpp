#include "planks/optim.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

namespace planks {

namespace {

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                           59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131};

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
    f *= inv;
  }
  return r;
}

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Vec normalize_or(const Vec& x, int fallback_axis) {
  const double n = x.norm();
  if (n > 0.0) return x / n;
  return Vec::Unit(x.size(), fallback_axis);
}

Vec project(const Vec& x, Domain domain) {
  switch (domain) {
    case Domain::kSphere:
      return normalize_or(x, 0);
    case Domain::kBall: {
      const double n = x.norm();
      return n > 1.0 ? Vec(x / n) : x;
    }
    case Domain::kPlane:
      return x;
  }
  return x;
}

Mat fd_hessian(const Objective& f, const Vec& x) {
  const auto d = x.size();
  const double h = 1e-6 * std::max(1.0, x.norm());
  Mat H(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    Vec xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    H.col(j) = (f.gradient(xp) - f.gradient(xm)) / (2.0 * h);
  }
  return 0.5 * (H + H.transpose());
}

bool lexicographic_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

// Gradient ascent. On the sphere the direction is the Riemannian gradient
// and steps are retracted by normalization; on the ball steps are
// projected.
void gradient_phase(const Objective& f, Vec& x, double& fx, Domain domain, const AscentOptions& opts) {
  double step = 0.1;
  const double max_step = domain == Domain::kPlane ? 10.0 : 1.0;
  for (int it = 0; it < opts.gradient_iterations; ++it) {
    Vec g = f.gradient(x);
    if (!g.allFinite()) return;
    Vec dir = g;
    if (domain == Domain::kSphere) dir -= x.dot(g) * x;
    const double gn = dir.norm();
    if (gn < opts.gradient_tol) return;
    const Vec unit = dir / gn;
    bool accepted = false;
    while (step > 1e-14) {
      const Vec y = project(x + step * unit, domain);
      const double fy = f.value(y);
      const double gain = g.dot(y - x);
      if (std::isfinite(fy) && fy >= fx + 1e-4 * std::max(gain, 0.0) && fy > fx) {
        const double moved = (y - x).norm();
        x = y;
        fx = fy;
        step = std::min(2.0 * step, max_step);
        accepted = true;
        if (moved < 1e-13) return;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) return;
  }
}

// Stationarity measure of x for the given domain. For the ball, a boundary
// point with outward gradient is measured tangentially.
double stationarity(const Vec& x, const Vec& g, Domain domain) {
  if (domain == Domain::kSphere) return (g - x.dot(g) * x).norm();
  if (domain == Domain::kBall && x.norm() >= 1.0 - 1e-12 && x.dot(g) > 0.0) {
    const Vec u = x.normalized();
    return (g - u.dot(g) * u).norm();
  }
  return g.norm();
}

// Newton iterations on the sphere (tangent space) or in the plane. Returns
// false when a plane step would leave the unit ball (ball mode only), with x
// set to the projected boundary point.
bool newton_phase(const Objective& f, Vec& x, double& fx, bool on_sphere, bool inside_ball,
                  const AscentOptions& opts) {
  const auto d = x.size();
  for (int it = 0; it < opts.newton_iterations; ++it) {
    const Vec g = f.gradient(x);
    if (!g.allFinite()) return true;
    Mat basis;
    Mat H = fd_hessian(f, x);
    if (on_sphere) {
      if (d == 1) return true;
      Mat span(d, 1);
      span.col(0) = x;
      basis = orthonormal_complement(span);
      H -= x.dot(g) * Mat::Identity(d, d);
    } else {
      basis = Mat::Identity(d, d);
    }
    const Mat Ht = basis.transpose() * H * basis;
    const Vec gt = basis.transpose() * g;
    const double gnorm = gt.norm();
    if (gnorm < opts.gradient_tol) return true;

    Eigen::SelfAdjointEigenSolver<Mat> eig(Ht);
    const Vec lam = eig.eigenvalues();
    const Mat V = eig.eigenvectors();
    const double scale = std::max(lam.cwiseAbs().maxCoeff(), 1e-300);
    Vec s = Vec::Zero(gt.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      const double comp = V.col(i).dot(gt);
      if (lam[i] < -1e-10 * scale) {
        s -= (comp / lam[i]) * V.col(i);
      } else {
        s += (comp / scale) * V.col(i);
      }
    }

    bool accepted = false;
    double alpha = 1.0;
    for (int bt = 0; bt < 40; ++bt, alpha *= 0.5) {
      Vec y = x + alpha * (basis * s);
      if (on_sphere) y.normalize();
      if (inside_ball && y.norm() > 1.0) {
        x = y.normalized();
        fx = f.value(x);
        return false;
      }
      const double fy = f.value(y);
      if (!std::isfinite(fy)) continue;
      const Vec gy = f.gradient(y);
      const Vec gyt = on_sphere ? Vec(gy - y.dot(gy) * y) : gy;
      const double slack = 1e-13 * (1.0 + std::abs(fx));
      if (fy > fx || (fy >= fx - slack && gyt.norm() < gnorm)) {
        x = y;
        fx = fy;
        accepted = true;
        break;
      }
    }
    if (!accepted) return true;
  }
  return true;
}

}  // namespace

AscentResult ascend(const Objective& f, Vec start, Domain domain, const AscentOptions& opts) {
  AscentResult res;
  Vec x = project(start, domain);
  double fx = f.value(x);
  if (!std::isfinite(fx)) {
    res.point = x;
    return res;
  }
  if (domain == Domain::kSphere && x.size() == 1) {
    res.point = x;
    res.value = fx;
    res.converged = true;
    return res;
  }

  gradient_phase(f, x, fx, domain, opts);

  if (domain == Domain::kBall) {
    bool boundary = x.norm() >= 1.0 - 1e-9 && x.dot(f.gradient(x)) > 0.0;
    for (int round = 0; round < 3; ++round) {
      if (boundary) {
        x.normalize();
        fx = f.value(x);
        newton_phase(f, x, fx, /*on_sphere=*/true, false, opts);
        if (x.dot(f.gradient(x)) > 0.0) break;
        // The gradient turned inward: release the constraint.
        gradient_phase(f, x, fx, domain, opts);
        boundary = false;
      } else {
        if (newton_phase(f, x, fx, false, /*inside_ball=*/true, opts)) break;
        boundary = true;
      }
    }
  } else {
    newton_phase(f, x, fx, domain == Domain::kSphere, false, opts);
  }

  res.point = x;
  res.value = fx;
  const Vec g = f.gradient(x);
  res.gradient_norm = g.allFinite() ? stationarity(x, g, domain) : std::numeric_limits<double>::infinity();
  res.converged = res.gradient_norm < 1e-7 * std::max(1.0, g.norm());
  return res;
}

std::vector<AscentResult> multi_ascend(const Objective& f, const std::vector<Vec>& starts,
                                       Domain domain, const AscentOptions& opts) {
  std::vector<AscentResult> out(starts.size());
  parallel_for(static_cast<int>(starts.size()),
               [&](int i) { out[i] = ascend(f, starts[i], domain, opts); });
  std::sort(out.begin(), out.end(), [](const AscentResult& a, const AscentResult& b) {
    const bool fa = std::isfinite(a.value), fb = std::isfinite(b.value);
    if (fa != fb) return fa;
    if (fa && a.value != b.value) return a.value > b.value;
    return lexicographic_less(a.point, b.point);
  });
  return out;
}

std::vector<AscentResult> near_maximizers(const std::vector<AscentResult>& sorted, double log_tol,
                                          double merge_dist) {
  std::vector<AscentResult> out;
  if (sorted.empty() || !std::isfinite(sorted.front().value)) return out;
  const double best = sorted.front().value;
  for (const auto& r : sorted) {
    if (!std::isfinite(r.value) || r.value < best - log_tol) continue;
    const bool dup = std::any_of(out.begin(), out.end(), [&](const AscentResult& o) {
      return (o.point - r.point).norm() < merge_dist;
    });
    if (!dup) out.push_back(r);
  }
  return out;
}

std::vector<Vec> halton_points(int dim, int count, std::uint64_t seed) {
  constexpr int kMaxDim = static_cast<int>(std::size(kPrimes));
  std::mt19937_64 rng(seed);
  std::vector<double> shift(dim);
  for (auto& s : shift) s = unit_uniform(rng);
  std::vector<Vec> pts;
  pts.reserve(count);
  for (int i = 1; i <= count; ++i) {
    Vec p(dim);
    for (int j = 0; j < dim; ++j) {
      // Beyond the prime table fall back to plain pseudo-random coordinates.
      const double u = j < kMaxDim ? radical_inverse(static_cast<std::uint64_t>(i), kPrimes[j])
                                   : unit_uniform(rng);
      p[j] = std::fmod(u + shift[j], 1.0);
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

std::vector<Vec> sphere_starts(int dim, int count, std::uint64_t seed) {
  std::vector<Vec> out;
  out.reserve(count);
  if (dim == 1) {
    for (int i = 0; i < count; ++i) out.push_back(Vec::Constant(1, i % 2 == 0 ? 1.0 : -1.0));
    return out;
  }
  if (dim == 2) {
    for (const auto& u : halton_points(1, count, seed)) {
      const double a = 2.0 * std::numbers::pi * u[0];
      Vec p(2);
      p << std::cos(a), std::sin(a);
      out.push_back(p);
    }
    return out;
  }
  const int pairs = (dim + 1) / 2;
  for (const auto& u : halton_points(2 * pairs, count, seed)) {
    Vec g(2 * pairs);
    for (int k = 0; k < pairs; ++k) {
      const double r = std::sqrt(-2.0 * std::log(std::max(u[2 * k], 1e-300)));
      const double a = 2.0 * std::numbers::pi * u[2 * k + 1];
      g[2 * k] = r * std::cos(a);
      g[2 * k + 1] = r * std::sin(a);
    }
    out.push_back(normalize_or(g.head(dim), 0));
  }
  return out;
}

std::vector<Vec> ball_starts(int dim, int count, std::uint64_t seed) {
  std::vector<Vec> out;
  if (count <= 0) return out;
  out.push_back(Vec::Zero(dim));
  const auto dirs = sphere_starts(dim, count, seed);
  const auto radii = halton_points(1, count, seed ^ 0x9e3779b97f4a7c15ULL);
  for (int i = 1; i < count; ++i) {
    const double r = (i % 4 == 1) ? 1.0 : std::pow(radii[i][0], 1.0 / dim);
    if (dim == 1) {
      // Spread 1-d starts evenly over [-1, 1] so every hump gets one.
      const double x = -1.0 + 2.0 * (i - 1) / std::max(1, count - 2);
      out.push_back(Vec::Constant(1, std::clamp(x, -1.0, 1.0)));
    } else {
      out.push_back(r * dirs[i]);
    }
  }
  return out;
}

void parallel_for(int count, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  const int workers = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, count);
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace planks
