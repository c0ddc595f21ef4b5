#include <benchmark/benchmark.h>

#include "vlcsync/channel.hpp"
#include "vlcsync/combined.hpp"
#include "vlcsync/montecarlo.hpp"
#include "vlcsync/sync_analysis.hpp"
#include "vlcsync/trellis.hpp"

using namespace vlcsync;

namespace {

BitLogLikelihoods noisy_frame(const CodeEntry& e, std::size_t L_S, double db) {
  Rng rng = trial_rng(5, 0);
  const ChannelSpec ch = ChannelSpec::awgn(db);
  return bit_log_likelihoods(transmit(encode(e.code, sample_symbols(e.source, L_S, rng)), ch, rng), ch);
}

// range(0): T, 0 for the bit/symbol trellis
void BM_Decode(benchmark::State& state) {
  const auto& e = CodeLibrary::bundled().at("C5");
  const TrellisDecoder dec(e.code, e.source);
  const BitLogLikelihoods llh = noisy_frame(e, 100, 5.0);
  const auto T = static_cast<std::size_t>(state.range(0));
  const TrellisConfig cfg = T == 0 ? TrellisConfig::exact(100) : TrellisConfig::aggregated(T, 100);
  std::uint64_t ops = 0;
  for (auto _ : state) {
    const DecodeResult r = dec.decode(cfg, llh);
    ops = r.branch_ops;
    benchmark::DoNotOptimize(r.log_metric);
  }
  state.counters["branch_ops"] = static_cast<double>(ops);
}
BENCHMARK(BM_Decode)->Arg(1)->Arg(2)->Arg(5)->Arg(10)->Arg(20)->Arg(0)->Unit(benchmark::kMicrosecond);

void BM_CombinedDecode(benchmark::State& state) {
  const auto& e = CodeLibrary::bundled().at("C7");
  const TrellisDecoder dec(e.code, e.source);
  const BitLogLikelihoods llh = noisy_frame(e, 100, 4.0);
  const CombinedConfig cfg = CombinedConfig::make(3, 4);
  for (auto _ : state) benchmark::DoNotOptimize(combined_decode(dec, cfg, 100, llh).ops_total);
}
BENCHMARK(BM_CombinedDecode)->Unit(benchmark::kMicrosecond);

void BM_GainPolynomial(benchmark::State& state) {
  const auto& e = CodeLibrary::bundled().at(state.range(0) == 0 ? "C10" : "C17");
  for (auto _ : state) benchmark::DoNotOptimize(gain_polynomial(build_esd(e.code, e.source)));
}
BENCHMARK(BM_GainPolynomial)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

// range(0): L_S
void BM_Criteria(benchmark::State& state) {
  const auto& e = CodeLibrary::bundled().at("C10");
  const auto L_S = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(criteria(e.code, e.source, L_S, ChannelSpec::awgn(6.0), 1e-6).delta_s.p_sync);
}
BENCHMARK(BM_Criteria)->Arg(100)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
