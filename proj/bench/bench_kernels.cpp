// Parallel kernels against their serial references, plus the sequential
// filter step for scale.

#include "rsbf/filter_bank.hpp"
#include "rsbf/kernels.hpp"
#include "rsbf/runner.hpp"
#include "rsbf/stream.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

const rsbf::ElementStream& stream_1m() {
  static const auto s = rsbf::generate({1'000'000, 1'000'000, 1});
  return s;
}

template <auto Kernel>
void BM_DigestBatch(benchmark::State& state) {
  const auto& stream = stream_1m();
  std::vector<rsbf::ElementDigest> out(stream.size());
  for (auto _ : state) {
    Kernel(stream, 0, 42, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(stream.size()));
}
BENCHMARK(BM_DigestBatch<rsbf::kernels::digest_batch_serial>)->Name("digest_batch/serial")->UseRealTime();
BENCHMARK(BM_DigestBatch<rsbf::kernels::digest_batch>)->Name("digest_batch/parallel")->UseRealTime();

template <auto Kernel>
void BM_OnesStep(benchmark::State& state) {
  const auto trials = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(4096, 2048, 0.5, trials, 7));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trials));
}
BENCHMARK(BM_OnesStep<rsbf::kernels::ones_step_monte_carlo_serial>)
    ->Name("ones_step_monte_carlo/serial")
    ->Arg(1'000'000)
    ->UseRealTime();
BENCHMARK(BM_OnesStep<rsbf::kernels::ones_step_monte_carlo>)
    ->Name("ones_step_monte_carlo/parallel")
    ->Arg(1'000'000)
    ->UseRealTime();

void BM_Compare(benchmark::State& state) {
  const auto& stream = stream_1m();
  const std::vector<std::uint64_t> memories = {16384, 262144, 4194304};
  const std::vector<rsbf::Algorithm> algos = {rsbf::Algorithm::kRsbf, rsbf::Algorithm::kSbf,
                                              rsbf::Algorithm::kBloom};
  for (auto _ : state) benchmark::DoNotOptimize(rsbf::compare(rsbf::RunConfig{}, memories, algos, stream));
}
BENCHMARK(BM_Compare)->Name("compare/3x3_grid_1M")->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_FilterProcess(benchmark::State& state) {
  const auto& stream = stream_1m();
  std::vector<rsbf::ElementDigest> digests(stream.size());
  rsbf::FilterBank bank(rsbf::plan(16384, 0.1), 1);
  rsbf::kernels::digest_batch(stream, 0, bank.hash_seed(), digests);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bank.process(digests[i]));
    if (++i == digests.size()) i = 0;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_FilterProcess)->Name("filter_bank/process");

}  // namespace

BENCHMARK_MAIN();
