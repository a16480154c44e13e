#include <benchmark/benchmark.h>

#include "qmod/driver/corpus.hpp"
#include "qmod/driver/pipeline.hpp"
#include "qmod/frontend/parser.hpp"
#include "qmod/ir/qasm.hpp"
#include "qmod/sema/analyze.hpp"

namespace {

using namespace qmod;

const std::vector<driver::CorpusEntry>& corpus() {
  static const auto m = driver::load_manifest(std::string(QMOD_CORPUS_DIR) + "/manifest.json");
  return m;
}

const driver::CorpusEntry& program(const benchmark::State& st) { return corpus().at(static_cast<std::size_t>(st.range(0))); }

void corpus_args(benchmark::internal::Benchmark* b) {
  for (std::size_t i = 0; i < corpus().size(); ++i) b->Arg(static_cast<int64_t>(i));
}

void BM_Parse(benchmark::State& st) {
  const auto& e = program(st);
  std::string src = driver::read_file(e.file);
  for (auto _ : st) benchmark::DoNotOptimize(frontend::parse_source(src));
  st.SetLabel(e.name);
  st.SetBytesProcessed(static_cast<int64_t>(st.iterations() * src.size()));
}
BENCHMARK(BM_Parse)->Apply(corpus_args);

void BM_Analyze(benchmark::State& st) {
  const auto& e = program(st);
  auto opts = driver::entry_options(e);
  auto ast = frontend::parse_source(driver::read_file(e.file));
  sema::AnalysisOptions ao;
  ao.machine_precision = opts.machine_precision;
  ao.constants = opts.constants;
  ao.arguments = opts.arguments;
  for (auto _ : st) benchmark::DoNotOptimize(sema::analyze(ast, ao));
  st.SetLabel(e.name);
}
BENCHMARK(BM_Analyze)->Apply(corpus_args);

void BM_Compile(benchmark::State& st) {
  const auto& e = program(st);
  auto opts = driver::entry_options(e);
  std::string src = driver::read_file(e.file);
  std::size_t gates = 0;
  for (auto _ : st) {
    auto c = driver::compile(src, opts);
    gates = c.lowered.events.size();
    benchmark::DoNotOptimize(c);
  }
  st.SetLabel(e.name);
  st.counters["events"] = static_cast<double>(gates);
}
BENCHMARK(BM_Compile)->Apply(corpus_args)->Unit(benchmark::kMicrosecond);

void BM_Simulate(benchmark::State& st) {
  const auto& e = program(st);
  auto c = driver::compile(driver::read_file(e.file), driver::entry_options(e));
  for (auto _ : st) benchmark::DoNotOptimize(driver::simulate(c));
  st.SetLabel(e.name);
}
BENCHMARK(BM_Simulate)->Apply(corpus_args)->Unit(benchmark::kMicrosecond);

void BM_EmitQasm(benchmark::State& st) {
  const auto& e = program(st);
  auto c = driver::compile(driver::read_file(e.file), driver::entry_options(e));
  for (auto _ : st) benchmark::DoNotOptimize(ir::emit_qasm3(c.lowered));
  st.SetLabel(e.name);
}
BENCHMARK(BM_EmitQasm)->Apply(corpus_args)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
