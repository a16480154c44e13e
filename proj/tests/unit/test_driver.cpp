#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "oracle.hpp"
#include "qmod/driver/corpus.hpp"
#include "qmod/driver/pipeline.hpp"
#include "qmod/ir/qasm.hpp"
#include "qmod/sim/sampling.hpp"

using namespace qmod;

namespace {

const std::string kCorpus = QMOD_CORPUS_DIR;

std::vector<driver::CorpusEntry> manifest() { return driver::load_manifest(kCorpus + "/manifest.json"); }

const driver::CorpusEntry& entry(const std::vector<driver::CorpusEntry>& m, const std::string& name) {
  for (const auto& e : m)
    if (e.name == name) return e;
  throw std::runtime_error("no corpus entry " + name);
}

struct Shell {
  int code = -1;
  std::string out;
};

#ifdef QMODC_PATH
Shell qmodc(const std::string& args) {
  Shell r;
  std::string cmd = std::string(QMODC_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}
#endif

}  // namespace

TEST(LinearCoefs, TanhFirstQuarter) {
  auto [a, b] = driver::linear_coefs([](double x) { return std::tanh(x); }, 0.0, 0.25);
  EXPECT_NEAR(a, std::tanh(0.25) / 0.25, 1e-15);
  EXPECT_NEAR(a, 0.979675, 1e-6);
  EXPECT_NEAR(b, 0.0, 1e-15);
}

TEST(LinearCoefs, ConstantAndIdentity) {
  auto [a0, b0] = driver::linear_coefs([](double) { return 0.7; }, 0.2, 0.9);
  EXPECT_NEAR(a0, 0.0, 1e-15);
  EXPECT_NEAR(b0, 0.7, 1e-15);
  auto [a1, b1] = driver::linear_coefs([](double x) { return x; }, 0.2, 0.9, true);
  EXPECT_NEAR(a1, 1.0, 1e-12);
  EXPECT_NEAR(b1, 0.0, 1e-12);
}

TEST(LinearCoefs, DegenerateSegment) {
  EXPECT_THROW(driver::linear_coefs([](double x) { return x; }, 0.5, 0.5), driver::DegenerateSegment);
  EXPECT_THROW(driver::segment_coefs([](double x) { return x; }, 0), driver::DegenerateSegment);
}

TEST(LinearCoefs, SegmentsMatchOracle) {
  auto f = [](double x) { return std::tanh(x); };
  auto [a, b] = driver::segment_coefs(f, 4);
  auto [oa, ob] = oracle::endpoint_lines(f, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(a[i], oa[i], 1e-14);
    EXPECT_NEAR(b[i], ob[i], 1e-14);
  }
}

TEST(LinearCoefs, ChebyshevNodesReduceMaxError) {
  auto f = [](double x) { return std::tanh(x); };
  auto [a, b] = driver::segment_coefs(f, 4);
  auto [ca, cb] = driver::segment_coefs(f, 4, 0.0, 1.0, true);
  EXPECT_LT(oracle::interpolation_error(f, ca, cb), oracle::interpolation_error(f, a, b));
}

TEST(Values, ScalarsArraysAndBindings) {
  EXPECT_EQ(driver::parse_value("0.5").scalar(), Rational(1, 2));
  EXPECT_EQ(driver::parse_value("-3").scalar(), Rational(-3));
  auto arr = driver::parse_value("[0.1, 1/4]");
  ASSERT_TRUE(arr.is_array());
  EXPECT_EQ(arr.elements()[1].scalar(), Rational(1, 4));
  auto [name, v] = driver::parse_binding("gammas=[0.1]");
  EXPECT_EQ(name, "gammas");
  EXPECT_EQ(v.elements().size(), 1u);
  EXPECT_THROW(driver::parse_binding("nonsense"), std::invalid_argument);
}

TEST(Pipeline, ParseErrorBecomesDiagnostic) {
  auto c = driver::compile("qfunc main( {");
  EXPECT_FALSE(c.ok());
  EXPECT_EQ(c.diagnostics.error_count(), 1u);
  EXPECT_TRUE(c.diagnostics.items()[0].span.valid());
}

TEST(Pipeline, LoweredCircuitHasNoMultiControlledGates) {
  auto c = driver::compile(driver::read_file(kCorpus + "/sorted_oracle.qmod"));
  ASSERT_TRUE(c.ok());
  for (const auto& e : c.lowered.events)
    if (e.is_gate()) EXPECT_LE(e.gate.qubits.size(), 3u);
}

TEST(Corpus, ManifestListsEveryProgram) {
  auto m = manifest();
  EXPECT_EQ(m.size(), 9u);
  for (const auto& e : m) {
    EXPECT_TRUE(std::ifstream(e.file).good()) << e.file;
    EXPECT_FALSE(e.expect.kind.empty());
  }
}

TEST(Corpus, DeclaredExpectationsHold) {
  for (const auto& e : manifest()) {
    SCOPED_TRACE(e.name);
    auto c = driver::compile(driver::read_file(e.file), driver::entry_options(e));
    ASSERT_TRUE(c.ok()) << c.diagnostics.format(e.file);
    auto r = driver::simulate(c);
    if (e.expect.kind == "distribution") {
      std::map<std::string, double> got;
      for (const auto& [k, p] : sim::output_distribution(r.state, c.lowered.outputs))
        if (p > 1e-12) got[driver::tuple_key(k)] += p;
      EXPECT_EQ(got.size(), e.expect.values.size());
      for (const auto& [k, p] : e.expect.values) EXPECT_NEAR(got[k], p, 1e-10) << k;
    } else if (e.expect.kind == "phases") {
      std::map<std::string, sim::Key> keys;
      for (const auto& en : r.state.entries())
        keys[driver::tuple_key(sim::decode_outputs(r.state, en.key, c.lowered.outputs))] = en.key;
      ASSERT_TRUE(keys.count(e.expect.reference));
      auto ph = sim::relative_phases(r.state, keys.at(e.expect.reference));
      for (const auto& [k, want] : e.expect.values) {
        ASSERT_TRUE(keys.count(k)) << k;
        EXPECT_LT(oracle::phase_gap(ph.at(keys.at(k)), want), 1e-9) << k;
      }
    } else {
      EXPECT_EQ(e.expect.kind, "oracle");
      EXPECT_FALSE(e.expect.oracle.empty());
    }
  }
}

TEST(Corpus, GoldenQasmIsCurrent) {
  bool update = std::getenv("QMOD_UPDATE_GOLDEN") != nullptr;
  for (const auto& e : manifest()) {
    SCOPED_TRACE(e.name);
    auto c = driver::compile(driver::read_file(e.file), driver::entry_options(e));
    ASSERT_TRUE(c.ok());
    std::string qasm = ir::emit_qasm3(c.lowered);
    if (update) {
      std::ofstream(e.golden) << qasm;
      continue;
    }
    EXPECT_TRUE(qasm == driver::read_file(e.golden)) << "stale golden file " << e.golden
                                                     << " (rerun with QMOD_UPDATE_GOLDEN=1)";
  }
}

TEST(Corpus, StaleGoldenIsDetected) {
  auto e = entry(manifest(), "bell");
  auto c = driver::compile(driver::read_file(e.file), driver::entry_options(e));
  std::string golden = driver::read_file(e.golden);
  std::string stale = golden;
  stale.replace(stale.find("h q[0];"), 7, "x q[0];");
  EXPECT_EQ(ir::emit_qasm3(c.lowered), golden);
  EXPECT_NE(ir::emit_qasm3(c.lowered), stale);
}

TEST(Corpus, QasmIsByteStable) {
  for (const auto& e : manifest()) {
    auto a = driver::compile(driver::read_file(e.file), driver::entry_options(e));
    auto b = driver::compile(driver::read_file(e.file), driver::entry_options(e));
    EXPECT_EQ(ir::emit_qasm3(a.lowered), ir::emit_qasm3(b.lowered)) << e.name;
  }
}

#ifdef QMODC_PATH

TEST(Cli, CompileBell) {
  auto r = qmodc("compile " + kCorpus + "/bell.qmod");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("qubit[2] q;"), std::string::npos);
  EXPECT_NE(r.out.find("cx q[0], q[1];"), std::string::npos);
}

TEST(Cli, DiagnosticsExitOne) {
  std::string path = testing::TempDir() + "double_init.qmod";
  std::ofstream(path) << "qfunc main(res: output qnum) {\n  res |= 1;\n  res |= 1;\n}\n";
  EXPECT_EQ(qmodc("compile " + path).code, 1);
  std::string err = testing::TempDir() + "double_init.err";
  int rc = std::system((std::string(QMODC_PATH) + " compile " + path + " 2> " + err).c_str());
  EXPECT_NE(rc, 0);
  EXPECT_NE(driver::read_file(err).find(":3:3: error:"), std::string::npos);
}

TEST(Cli, RuntimeErrorExitTwo) {
  EXPECT_EQ(qmodc("run " + kCorpus + "/tanh_amp.qmod --max-qubits 24").code, 2);
}

TEST(Cli, UsageErrorExitThree) {
  EXPECT_EQ(qmodc("run").code, 3);
  EXPECT_EQ(qmodc("frobnicate " + kCorpus + "/bell.qmod").code, 3);
  EXPECT_EQ(qmodc("run " + kCorpus + "/bell.qmod --shots 0").code, 3);
  EXPECT_EQ(qmodc("run " + kCorpus + "/knapsack_qaoa.qmod --arg nonsense").code, 3);
}

TEST(Cli, RunIsSeedDeterministic) {
  auto a = qmodc("run " + kCorpus + "/digital_arith.qmod --shots 4096 --seed 3");
  auto b = qmodc("run " + kCorpus + "/digital_arith.qmod --shots 4096 --seed 3");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  std::istringstream in(a.out);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    ++rows;
    std::istringstream f(line);
    std::string value;
    std::uint64_t count;
    double prob;
    f >> value >> count >> prob;
    EXPECT_NEAR(static_cast<double>(count), 1024.0, 3 * std::sqrt(4096 * 0.25 * 0.75)) << value;
  }
  EXPECT_EQ(rows, 4);
}

TEST(Cli, PhasesTable) {
  auto r = qmodc("phases " + kCorpus + "/phase_square.qmod");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1\t0.7853981634"), std::string::npos);
  EXPECT_NE(r.out.find("2\t3.141592654"), std::string::npos);
  EXPECT_NE(r.out.find("3\t0.7853981634"), std::string::npos);
}

TEST(Cli, KnapsackCompilesWithBoundArguments) {
  auto r = qmodc("compile " + kCorpus + "/knapsack_qaoa.qmod --const NUM_LAYERS=1 --arg 'gammas=[0.1]' --arg 'betas=[0.0]'");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("OPENQASM 3.0;"), std::string::npos);
}

TEST(Cli, AmplitudeSampling) {
  auto r = qmodc("run " + kCorpus + "/tanh_amp.qmod --shots 65536 --seed 11");
  ASSERT_EQ(r.code, 0);
  auto at = r.out.find("# ind\n");
  ASSERT_NE(at, std::string::npos);
  std::istringstream in(r.out.substr(at + 6));
  std::string value;
  std::uint64_t count;
  double prob = 0;
  while (in >> value >> count >> prob)
    if (value == "1") break;
  EXPECT_NEAR(prob, 0.4638, 0.02);
}

TEST(Cli, PiecewiseWithLinearCoefs) {
  auto r = qmodc("report " + kCorpus + "/piecewise_tanh.qmod --const NUM_SEGS=4 --arg p=5 --linear-coefs tanh:4");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("width\t"), std::string::npos);
}

#endif
