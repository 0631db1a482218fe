// Serial reference against the OpenMP kernels: candidate search inside
// reconstruct, and the oracle sweep over many small formulas.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "horn/oracle.hpp"
#include "horn/reconstruct.hpp"
#include "horn/syntax.hpp"

using namespace horn;

namespace {

Formula corpus(const std::string& name) {
  return parse_corpus(load_corpus(std::string(HORN_CORPUS_DIR) + "/" + name + ".txt"));
}

// Unfiltered search on a formula with a large candidate space.
void search(benchmark::State& state, Execution execution) {
  Formula f = corpus("disjointemptynotsingle");
  ReconstructOptions options;
  options.filters = Filters::none();
  options.execution = execution;
  for (auto _ : state) {
    auto r = reconstruct(f, options);
    benchmark::DoNotOptimize(r.totals.candidates_tested);
  }
}

// Filtered search where most candidates die before the full check.
void filtered(benchmark::State& state, Execution execution) {
  Formula f = corpus("disconnected");
  ReconstructOptions options;
  options.execution = execution;
  for (auto _ : state) {
    auto r = reconstruct(f, options);
    benchmark::DoNotOptimize(r.totals.candidates_tested);
  }
}

const std::vector<Formula>& sweep_inputs() {
  static const std::vector<Formula> all = SmallFormulaEnumerator(4, 3, 2, 0).all();
  return all;
}

void sweep(benchmark::State& state, Execution execution) {
  const auto& all = sweep_inputs();
  for (auto _ : state) {
    auto records = oracle_sweep(all, {}, execution);
    benchmark::DoNotOptimize(records.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * all.size()));
}

}  // namespace

BENCHMARK_CAPTURE(search, serial, Execution::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(search, parallel, Execution::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(filtered, serial, Execution::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(filtered, parallel, Execution::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(sweep, serial, Execution::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(sweep, parallel, Execution::parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
