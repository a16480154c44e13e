#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "qmod/driver/corpus.hpp"
#include "qmod/driver/pipeline.hpp"
#include "qmod/sim/sampling.hpp"
#include "qmod/synth/synth.hpp"

using namespace qmod;

namespace {

driver::Compilation build(const std::string& src, driver::CompileOptions o = {}) {
  auto c = driver::compile(src, o);
  EXPECT_TRUE(c.ok()) << c.diagnostics.format("test");
  return c;
}

std::map<std::string, double> dist(const driver::Compilation& c) {
  auto r = driver::simulate(c);
  EXPECT_EQ(r.max_release_residual, 0.0);
  std::map<std::string, double> out;
  for (const auto& [k, p] : sim::output_distribution(r.state, c.lowered.outputs))
    if (p > 1e-12) out[driver::tuple_key(k)] += p;
  return out;
}

std::size_t count_gates(const ir::Circuit& c, ir::GateKind k) {
  std::size_t n = 0;
  for (const auto& e : c.events)
    if (e.is_gate() && e.gate.kind == k) ++n;
  return n;
}

types::NumExprPtr q(const std::string& n, int ref) { return types::NumExpr::quantum(n, ref); }
types::NumExprPtr k(Rational v) { return types::NumExpr::constant(std::move(v)); }
types::NumExprPtr bin(frontend::BinaryOp op, types::NumExprPtr a, types::NumExprPtr b) {
  return types::NumExpr::binary(op, std::move(a), std::move(b));
}

}  // namespace

TEST(Digital, ConstantXorSetsBasisState) {
  auto c = build("qfunc main(x: output qnum[5, unsigned, 5]) { allocate(x); x ^= 0.8125; }");
  auto r = driver::simulate(c);
  ASSERT_EQ(r.state.entries().size(), 1u);
  EXPECT_EQ(r.state.code_of(r.state.entries()[0].key, c.lowered.outputs[0].qubits), 26);
}

TEST(Digital, BareVariableCopies) {
  auto d = dist(build(R"(
qfunc main(a: output qnum[3, signed, 1], res: output qnum) {
  allocate(a);
  hadamard_transform(a);
  res |= a;
}
)"));
  ASSERT_EQ(d.size(), 8u);
  for (const auto& [k, p] : d) {
    auto semi = k.find("; ");
    EXPECT_EQ(k.substr(0, semi), k.substr(semi + 2));
    EXPECT_NEAR(p, 0.125, 1e-12);
  }
}

TEST(Digital, ScaledProductPlusConstant) {
  auto d = dist(build(driver::read_file(std::string(QMOD_CORPUS_DIR) + "/digital_arith.qmod")));
  std::map<std::string, double> want{{"0.75", 0.25}, {"1.125", 0.25}, {"1.5", 0.25}, {"1.875", 0.25}};
  ASSERT_EQ(d.size(), want.size());
  for (const auto& [k, p] : want) EXPECT_NEAR(d[k], p, 1e-10);
}

TEST(Digital, KnapsackPredicateTruthTable) {
  auto d = dist(build(R"(
qfunc main(a: output qnum[3], b: output qnum[2], aux: output qbit) {
  allocate(a);
  allocate(b);
  hadamard_transform(a);
  hadamard_transform(b);
  aux |= 2*a + 3*b <= 12;
}
)"));
  ASSERT_EQ(d.size(), 32u);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 4; ++b) {
      std::string key = std::to_string(a) + "; " + std::to_string(b) + "; " + (2 * a + 3 * b <= 12 ? "1" : "0");
      EXPECT_NEAR(d[key], 1.0 / 32, 1e-12) << key;
    }
}

TEST(Digital, InplaceAddWraps) {
  auto d = dist(build(R"(
qfunc main(x: output qnum[2], s: output qnum[3]) {
  allocate(x);
  hadamard_transform(x);
  allocate(s);
  s ^= 6;
  s += x;
}
)"));
  for (int x = 0; x < 4; ++x) EXPECT_NEAR(d[std::to_string(x) + "; " + std::to_string((6 + x) % 8)], 0.25, 1e-12);
}

TEST(Digital, InvertUndoesAndPowerRepeats) {
  auto d = dist(build(R"(
qfunc inc(x: qnum[3]) {
  x += 1;
}
qfunc main(x: output qnum[3], y: output qnum[3]) {
  allocate(x);
  x ^= 5;
  invert {
    inc(x);
  }
  allocate(y);
  power(3) {
    inc(y);
  }
}
)"));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_NEAR(d["4; 3"], 1.0, 1e-12);
}

TEST(Phase, SquarePolynomialExpansion) {
  std::vector<synth::PolyOperand> refs{{{10, 11}, types::FixedPointFormat(2, false, 0)}};
  auto poly = synth::expr_to_phase_polynomial(*bin(frontend::BinaryOp::Pow, q("x", 0), k(2)), refs);
  synth::PhasePolynomial want{{{10}, 1}, {{11}, 4}, {{10, 11}, 4}};
  EXPECT_EQ(poly, want);
}

TEST(Phase, ConstantIsGlobal) {
  auto poly = synth::expr_to_phase_polynomial(*k(5), {});
  ASSERT_EQ(poly.size(), 1u);
  EXPECT_EQ(poly.begin()->first, std::vector<ir::QubitId>{});
  EXPECT_TRUE(synth::phase_gates(poly, 1.0).empty());
}

TEST(Phase, KnapsackCostIsLinear) {
  std::vector<synth::PolyOperand> refs{{{0, 1, 2}, types::FixedPointFormat(3, false, 0)},
                                       {{3, 4}, types::FixedPointFormat(2, false, 0)}};
  using frontend::BinaryOp;
  auto e = types::NumExpr::unary(
      frontend::UnaryOp::Neg,
      bin(BinaryOp::Add, bin(BinaryOp::Mul, k(3), q("a", 0)), bin(BinaryOp::Mul, k(5), q("b", 1))));
  auto poly = synth::expr_to_phase_polynomial(*e, refs);
  synth::PhasePolynomial want{{{0}, -3}, {{1}, -6}, {{2}, -12}, {{3}, -5}, {{4}, -10}};
  EXPECT_EQ(poly, want);
}

TEST(Phase, ZeroAngleEmitsNothing) {
  std::vector<synth::PolyOperand> refs{{{0, 1}, types::FixedPointFormat(2, false, 0)}};
  auto poly = synth::expr_to_phase_polynomial(*q("x", 0), refs);
  EXPECT_TRUE(synth::phase_gates(poly, 0.0).empty());
}

TEST(Phase, RandomCubicMatchesDiagonal) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(-6, 6);
  using frontend::BinaryOp;
  for (int trial = 0; trial < 20; ++trial) {
    int c1 = coef(rng), c2 = coef(rng), c3 = coef(rng);
    auto x = q("x", 0);
    auto e = bin(BinaryOp::Add,
                 bin(BinaryOp::Add, bin(BinaryOp::Mul, k(Rational(c1, 4)), x), bin(BinaryOp::Mul, k(c2), bin(BinaryOp::Pow, x, k(2)))),
                 bin(BinaryOp::Mul, k(Rational(c3, 2)), bin(BinaryOp::Pow, x, k(3))));
    std::vector<synth::PolyOperand> refs{{{0, 1, 2, 3}, types::FixedPointFormat(4, true, 1)}};
    double theta = 0.37;
    auto gates = synth::phase_gates(synth::expr_to_phase_polynomial(*e, refs), theta);
    for (std::uint64_t v = 0; v < 16; ++v) {
      oracle::Dense d(4);
      d.set_basis(v);
      for (const auto& g : gates) d.apply(g);
      oracle::Q xv = oracle::decode(v, {4, true, 1});
      double f = oracle::to_double(oracle::Q(c1, 4) * xv + c2 * xv * xv + oracle::Q(c3, 2) * xv * xv * xv);
      EXPECT_LT(oracle::phase_gap(std::arg(d[v]), theta * f), 1e-10) << "trial " << trial << " v " << v;
    }
  }
}

TEST(Phase, SquareOfTwoBitRegister) {
  auto c = build(driver::read_file(std::string(QMOD_CORPUS_DIR) + "/phase_square.qmod"));
  auto r = driver::simulate(c);
  auto ids = c.lowered.outputs[0].qubits;
  Rational z = 0;
  auto ref = r.state.key_for({{ids, 0}});
  auto ph = sim::relative_phases(r.state, ref);
  double want[] = {0, M_PI / 4, M_PI, M_PI / 4};
  for (int v = 0; v < 4; ++v) EXPECT_LT(oracle::phase_gap(ph.at(r.state.key_for({{ids, v}})), want[v]), 1e-9);
}

TEST(Amplitude, ConstantOneFlips) {
  auto c = build("qfunc main(ind: output qbit) { allocate(ind); assign_amplitude(1, ind); }");
  auto r = driver::simulate(c);
  EXPECT_NEAR(std::abs(sim::marginal_amplitude(r.state, c.lowered.outputs[0].qubits, 1)), 1.0, 1e-12);
}

TEST(Amplitude, HalfOfRegisterValue) {
  auto c = build(R"(
qfunc main(x: output qnum[2, unsigned, 2], ind: output qbit) {
  allocate(x);
  hadamard_transform(x);
  allocate(ind);
  assign_amplitude(x / 2, ind);
}
)");
  auto r = driver::simulate(c);
  auto xs = c.lowered.outputs[0].qubits, ind = c.lowered.outputs[1].qubits;
  for (int v = 0; v < 4; ++v) {
    auto key = r.state.key_for({{xs, v}, {ind, 1}});
    EXPECT_NEAR(r.state.amplitude(key).real(), 0.5 * (v / 4.0 / 2), 1e-10);
  }
}

TEST(Control, PhaseGainsControl) {
  auto c = build(R"(
qfunc main(a: output qbit, x: output qnum[2]) {
  allocate(a);
  allocate(x);
  H(a);
  hadamard_transform(x);
  control(a) {
    phase(x, 1);
  }
}
)");
  for (const auto& e : c.circuit.events)
    if (e.is_gate() && ir::is_diagonal(e.gate.kind)) EXPECT_GE(e.gate.qubits.size(), 2u);
  auto r = driver::simulate(c);
  auto a = c.lowered.outputs[0].qubits, x = c.lowered.outputs[1].qubits;
  auto ph = sim::relative_phases(r.state, r.state.key_for({{a, 0}, {x, 0}}));
  for (int v = 0; v < 4; ++v) {
    EXPECT_LT(oracle::phase_gap(ph.at(r.state.key_for({{a, 0}, {x, v}})), 0), 1e-10);
    EXPECT_LT(oracle::phase_gap(ph.at(r.state.key_for({{a, 1}, {x, v}})), v), 1e-10);
  }
}

TEST(Control, ConstantTrueConditionAlwaysApplies) {
  auto d = dist(build(R"(
qfunc main(x: output qbit) {
  allocate(x);
  control(1 == 1) {
    X(x);
  }
}
)"));
  EXPECT_NEAR(d["1"], 1.0, 1e-12);
}

TEST(Control, OnExpressionCondition) {
  auto d = dist(build(R"(
qfunc main(x: output qnum[2], t: output qbit) {
  allocate(x);
  hadamard_transform(x);
  allocate(t);
  control(x == 2) {
    X(t);
  }
}
)"));
  for (int v = 0; v < 4; ++v) EXPECT_NEAR(d[std::to_string(v) + "; " + (v == 2 ? "1" : "0")], 0.25, 1e-12);
}

TEST(WithinApply, EmptyApplyIsIdentity) {
  auto d = dist(build(R"(
qfunc main(x: output qnum[2]) {
  allocate(x);
  x ^= 2;
  t: qnum[2];
  within {
    t |= x + 1;
  } apply {
  }
}
)"));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_NEAR(d["2"], 1.0, 1e-12);
}

TEST(WithinApply, ReleasedQubitsAreReused) {
  auto c = build(R"(
qfunc main(x: output qnum[2], y: output qnum[2]) {
  allocate(x);
  t: qnum[2];
  within {
    t |= x + 1;
  } apply {
  }
  allocate(y);
}
)");
  std::set<ir::QubitId> released;
  bool reused = false;
  for (const auto& e : c.circuit.events) {
    if (e.kind == ir::Event::Kind::Release) released.insert(e.ids.begin(), e.ids.end());
    if (e.kind == ir::Event::Kind::Alloc)
      for (auto id : e.ids) reused |= released.count(id) != 0;
  }
  EXPECT_TRUE(reused);
}

TEST(Repeat, HadamardTransformCountsAndZeroCount) {
  auto c = build(R"(
qfunc main(x: output qarray[qbit, 5]) {
  allocate(x);
  hadamard_transform(x);
  repeat(i, 0) {
    X(x[0]);
  }
}
)");
  EXPECT_EQ(count_gates(c.circuit, ir::GateKind::H), 5u);
  EXPECT_EQ(count_gates(c.circuit, ir::GateKind::X), 0u);
}

TEST(Recycling, DisabledPoolIsWiderButEquivalent) {
  std::string src = driver::read_file(std::string(QMOD_CORPUS_DIR) + "/sorted_oracle.qmod");
  driver::CompileOptions off;
  off.recycle = false;
  auto a = build(src), b = build(src, off);
  EXPECT_GT(b.lowered.num_qubits(), a.lowered.num_qubits());
  auto da = dist(a), db = dist(b);
  EXPECT_EQ(da.size(), db.size());
  for (const auto& [k, p] : da) EXPECT_NEAR(db[k], p, 1e-12);
}

TEST(Markers, FollowTopLevelStatements) {
  auto c = build(driver::read_file(std::string(QMOD_CORPUS_DIR) + "/digital_arith.qmod"));
  std::size_t markers = 0;
  for (const auto& e : c.circuit.events) markers += e.kind == ir::Event::Kind::Marker;
  // Six statements; the two bare declarations emit nothing.
  EXPECT_EQ(markers, 5u);
}
