#include <benchmark/benchmark.h>

#include <random>

#include "zorich/brush.hpp"
#include "zorich/mesh.hpp"
#include "zorich/surfaces.hpp"
#include "zorich/symbolic.hpp"

using namespace zorich;

namespace {

const Params& params() {
  static const Params p = certify_params(estimate_bilipschitz_constant(100000, 7), 0.01);
  return p;
}

Address sample_address() { return periodic_address({Cell{2, 0}, Cell{1, 1}}, 26); }

void BM_ZorichMap(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-50.0, 50.0), h(-5.0, 5.0);
  std::vector<Point3> points(1024);
  for (auto& p : points) p = {u(rng), u(rng), h(rng)};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(zorich_map(points[i++ & 1023], params()));
  }
}
BENCHMARK(BM_ZorichMap);

void BM_Phi(benchmark::State& state) {
  const Address a = sample_address();
  const int depth = static_cast<int>(state.range(0));
  const double t = t_min(a, depth, 1e-9, params()) + 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(phi(t, a, depth, params()));
}
BENCHMARK(BM_Phi)->Arg(10)->Arg(25);

void BM_TMin(benchmark::State& state) {
  const Address a = sample_address();
  for (auto _ : state) benchmark::DoNotOptimize(t_min(a, 20, 1e-9, params()));
}
BENCHMARK(BM_TMin);

void BM_FareyEncode(benchmark::State& state) {
  const Rational target =
      parse_rational("0.14159265358979323846264338327950288419716939937510582097494459230781640628620899");
  for (auto _ : state) benchmark::DoNotOptimize(farey_encode(target, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_FareyEncode)->Arg(10)->Arg(20);

void BM_SoshsTraversal(benchmark::State& state) {
  const SoshsTree tree = soshs_build(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    std::uint64_t n = 0;
    tree.for_each_leaf([&](const CuboidNode&) { ++n; });
    benchmark::DoNotOptimize(n);
  }
  state.counters["leaves"] = static_cast<double>(tree.leaf_count());
}
BENCHMARK(BM_SoshsTraversal)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_WildCheck(benchmark::State& state) {
  const auto chain = wild_hair_chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_wild_chain(chain));
}
BENCHMARK(BM_WildCheck)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
