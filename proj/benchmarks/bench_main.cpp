#include <benchmark/benchmark.h>

#include "onoff/converse.hpp"
#include "onoff/netproto.hpp"
#include "onoff/scheme.hpp"
#include "onoff/simulator.hpp"
#include "onoff/verifier.hpp"

namespace {

using namespace onoff;

void BM_PiFloor(benchmark::State& state) {
  const auto m = parse_matrix("3/5 2/5 1/7 6/7");
  const auto gap = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pi_floor(m, gap));
}
BENCHMARK(BM_PiFloor)->Arg(1)->Arg(4)->Arg(16)->Arg(64);

void BM_LpMinimize(benchmark::State& state) {
  const auto m = symmetric_matrix(Rational(1, 3));
  for (auto _ : state) benchmark::DoNotOptimize(lp_minimize(m, 3));
}
BENCHMARK(BM_LpMinimize);

void BM_BuildJoint(benchmark::State& state) {
  const auto m = symmetric_matrix(Rational(1, 4));
  const auto pattern = PrivacyPattern::parse("ON,OFF,OFF,ON,OFF,OFF,OFF,ON,OFF");
  const auto t = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_joint(m, pattern, uniform_probs(), t, optimal_encoder()));
  }
}
BENCHMARK(BM_BuildJoint)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_RunSession(benchmark::State& state) {
  SessionConfig cfg;
  cfg.matrix = symmetric_matrix(Rational(1, 4));
  cfg.pattern = PrivacyPattern::parse("ON,OFF,OFF");
  cfg.horizon = 2;
  cfg.trials = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_session(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunSession)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_FrameCodec(benchmark::State& state) {
  const auto frame = net::make_answer(12345, std::vector<std::uint8_t>(
                                                 static_cast<std::size_t>(state.range(0)), 0x5a));
  for (auto _ : state) benchmark::DoNotOptimize(net::decode_frame(net::encode_frame(frame)));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FrameCodec)->Arg(128)->Arg(4096);

}  // namespace
BENCHMARK_MAIN();
