#include <benchmark/benchmark.h>

#include <random>

#include "shortck/basin.hpp"
#include "shortck/gridset.hpp"
#include "shortck/julia1d.hpp"
#include "shortck/num.hpp"
#include "shortck/parallel.hpp"

using namespace shortck;
using Cx = std::complex<double>;

namespace {

MapSequence theorem_seq() { return MapSequence::shift_like(CoeffSequence::generator(1, 3), PolySpec{1.0}); }

void BM_ExtMul(benchmark::State& st) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<ExtComplex> xs;
  for (int i = 0; i < 1024; ++i) xs.push_back(ExtComplex::from_native(Cx(u(rng), u(rng))));
  ExtComplex acc = ExtComplex::from_native(1.0);
  std::size_t i = 0;
  for (auto _ : st) {
    acc = ext_mul(acc, xs[i++ & 1023]);
    benchmark::DoNotOptimize(acc);
  }
  st.SetItemsProcessed(st.iterations());
}
BENCHMARK(BM_ExtMul);

void BM_ClassifyPoint(benchmark::State& st) {
  const auto seq = theorem_seq();
  const BasinParams p = default_basin_params(seq);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<CPoint> zs;
  for (int i = 0; i < 256; ++i) zs.push_back(CPoint{Cx(u(rng), u(rng)), Cx(u(rng), u(rng))});
  std::size_t i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(classify_point(seq, zs[i++ & 255], p));
  st.SetItemsProcessed(st.iterations());
}
BENCHMARK(BM_ClassifyPoint);

void BM_RenderSlice(benchmark::State& st) {
  set_thread_count(static_cast<std::size_t>(st.range(1)));
  const auto seq = theorem_seq();
  const BasinParams p = default_basin_params(seq);
  const auto n = static_cast<std::size_t>(st.range(0));
  const SliceWindow w = z1_plane(2, 0.0, 3.0, 3.0, n, n);
  for (auto _ : st) benchmark::DoNotOptimize(render_slice(seq, w, p));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n * n));
  set_thread_count(0);
}
BENCHMARK(BM_RenderSlice)
    ->Args({128, 1})
    ->Args({128, 4})
    ->Args({256, 4})
    ->UseRealTime()
    ->Unit(benchmark::kMillisecond);

void BM_DistanceTransform(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  GridSet g(Rect{0.0, 2.0, 2.0}, n, n);
  std::mt19937_64 rng(3);
  for (std::size_t k = 0; k < n; ++k) g.set(rng() % n, rng() % n);
  for (auto _ : st) benchmark::DoNotOptimize(distance_to_set(g));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_DistanceTransform)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_JuliaGrid(benchmark::State& st) {
  const Poly1 p = Poly1::quartic(0.01, 0.01);
  const auto n = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(julia_grid(p, default_julia_rect(p), n, n, 400));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_JuliaGrid)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
