#include "planks/ballfinder.hpp"
#include "planks/covering.hpp"
#include "planks/sphereopt.hpp"
#include "planks/trigcircle.hpp"

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

using namespace planks;

namespace {

std::vector<AffineForm> forms(int d, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  std::vector<AffineForm> out;
  for (int i = 0; i < m; ++i) {
    Vec a(d);
    for (int j = 0; j < d; ++j) a[j] = g(rng);
    out.emplace_back(a, u(rng));
  }
  return out;
}

void BM_TrigZeros(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<std::pair<double, double>> c;
  for (int k = 0; k < n; ++k) c.emplace_back(g(rng), g(rng));
  const TrigPoly t(0.1, c);
  for (auto _ : state) benchmark::DoNotOptimize(trig_zeros(t));
}
BENCHMARK(BM_TrigZeros)->Arg(4)->Arg(16)->Arg(64);

void BM_SphereMax(benchmark::State& state) {
  const auto p = MultiPoly::product_of(forms(3, static_cast<int>(state.range(0)), 2));
  for (auto _ : state) benchmark::DoNotOptimize(maximize_abs_on_sphere(p, 64, 0));
}
BENCHMARK(BM_SphereMax)->Arg(3)->Arg(6)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_MultiplierPoint(benchmark::State& state) {
  const auto p = MultiPoly::product_of(forms(3, static_cast<int>(state.range(0)), 3));
  for (auto _ : state) benchmark::DoNotOptimize(multiplier_point(p, 0));
}
BENCHMARK(BM_MultiplierPoint)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_RefuteSphere(benchmark::State& state) {
  std::vector<SphericalSegment> segs;
  const int n = static_cast<int>(state.range(0));
  const double w = 0.95 * std::numbers::pi / n;
  for (int i = 0; i < n; ++i) {
    const double phi = std::numbers::pi * i / n;
    segs.emplace_back((Vec(3) << std::cos(phi), std::sin(phi), 0.3).finished().normalized(), 0.1, 0.5 * w);
  }
  for (auto _ : state) benchmark::DoNotOptimize(refute_cover_sphere(segs, 0));
}
BENCHMARK(BM_RefuteSphere)->Arg(3)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
