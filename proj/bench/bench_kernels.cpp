// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "bgcs/kernels.hpp"

using namespace bgcs;

namespace {

const PhysicalParams kParams;

std::vector<double> grid(std::size_t points) { return GridSpec{-14.0, 10.0, points}.samples(); }

void spinor_profile(benchmark::State& state, bool parallel) {
  const auto xs = grid(static_cast<std::size_t>(state.range(0)));
  const auto s = realize(build_coherent(Family::A, LadderFunction::unit(), Alpha::polar(2.0, 0.5)), kParams);
  for (auto _ : state) {
    auto out = parallel ? kernels::spinor_profile_parallel(s, xs) : kernels::spinor_profile_serial(s, xs);
    benchmark::DoNotOptimize(out.rho.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void closed_form_profile(benchmark::State& state, bool parallel) {
  const auto xs = grid(static_cast<std::size_t>(state.range(0)));
  const auto e = build_coherent(Family::B, LadderFunction::shift1(), Alpha::polar(1.5, 0.7));
  for (auto _ : state) {
    auto out = parallel ? kernels::closed_form_profile_parallel(Family::B, e.alpha, e.M(), kParams, xs)
                        : kernels::closed_form_profile_serial(Family::B, e.alpha, e.M(), kParams, xs);
    benchmark::DoNotOptimize(out.rho.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void sweep(benchmark::State& state, bool parallel) {
  std::vector<double> rs, ts;
  for (int i = 0; i < state.range(0); ++i) rs.push_back(3.0 * i / state.range(0));
  for (int i = 0; i < 16; ++i) ts.push_back(std::numbers::pi / 8 * i);
  for (auto _ : state) {
    auto out = parallel ? kernels::uncertainty_sweep_parallel(Family::C, LadderFunction::shift2(), System::bilayer,
                                                              rs, ts, 1e-12)
                        : kernels::uncertainty_sweep_serial(Family::C, LadderFunction::shift2(), System::bilayer,
                                                            rs, ts, 1e-12);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 16);
}

}  // namespace

BENCHMARK_CAPTURE(spinor_profile, serial, false)->Arg(1201)->Arg(9601);
BENCHMARK_CAPTURE(spinor_profile, parallel, true)->Arg(1201)->Arg(9601);
BENCHMARK_CAPTURE(closed_form_profile, serial, false)->Arg(1201);
BENCHMARK_CAPTURE(closed_form_profile, parallel, true)->Arg(1201);
BENCHMARK_CAPTURE(sweep, serial, false)->Arg(32);
BENCHMARK_CAPTURE(sweep, parallel, true)->Arg(32);

BENCHMARK_MAIN();
