#include <benchmark/benchmark.h>

#include "tausynth/hitting_set.hpp"
#include "tausynth/net.hpp"
#include "tausynth/reductions.hpp"
#include "tausynth/solver.hpp"
#include "tausynth/transition_system.hpp"

using namespace tausynth;

namespace {

HittingSetInstance running_instance(int kappa) {
  return make_hs({"X1", "X2", "X3", "X4"},
                 {{"X1", "X2"}, {"X2", "X3"}, {"X1", "X4"}, {"X1", "X3", "X4"}}, kappa);
}

void BM_RegionEnumeration(benchmark::State& state) {
  auto gadget = build_thm21(running_instance(2));
  NetType type = designated_type(Theorem::t21);
  for (auto _ : state) {
    RegionEnumerator stream(gadget.ts, type, static_cast<int>(state.range(0)));
    std::uint64_t regions = 0;
    while (stream.next()) ++regions;
    benchmark::DoNotOptimize(regions);
  }
}
BENCHMARK(BM_RegionEnumeration)->Arg(1)->Arg(2);

void BM_SingleAtom(benchmark::State& state) {
  auto gadget = build_thm21(running_instance(2));
  NetType type = designated_type(Theorem::t21);
  for (auto _ : state) {
    auto region = solve_single_atom(gadget.ts, type, gadget.d, gadget.alpha);
    benchmark::DoNotOptimize(region);
  }
}
BENCHMARK(BM_SingleAtom);

void BM_SynthesizeGadget(benchmark::State& state) {
  auto theorem = static_cast<Theorem>(state.range(0));
  auto gadget = build_gadget(running_instance(2), theorem);
  NetType type = designated_type(theorem);
  for (auto _ : state) {
    SynthesisOptions options;
    options.stop_at_first_unsolved = true;
    options.hint = gadget.alpha;
    auto result = synthesize(gadget.ts, type, gadget.d, options);
    benchmark::DoNotOptimize(result.solvable);
  }
}
BENCHMARK(BM_SynthesizeGadget)->Arg(0)->Arg(1);

void BM_GadgetGeneration(benchmark::State& state) {
  auto inst = running_instance(2);
  for (auto _ : state) {
    auto gadget = build_thm24(inst);
    benchmark::DoNotOptimize(gadget.ts.edge_count());
  }
}
BENCHMARK(BM_GadgetGeneration);

void BM_ReachabilityGraph(benchmark::State& state) {
  auto ts = make_ts({"s0", "s1"}, {"a"}, {{"s0", "a", "s1"}, {"s1", "a", "s0"}}, "s0");
  NetType type{Interaction::nop, Interaction::swap, Interaction::used, Interaction::set};
  auto result = synthesize(ts, type, 1);
  auto net = net_from_regions(ts, type, result.admissible);
  for (auto _ : state) {
    auto rg = reachability_graph(net);
    benchmark::DoNotOptimize(rg.state_count());
  }
}
BENCHMARK(BM_ReachabilityGraph);

}  // namespace

BENCHMARK_MAIN();
