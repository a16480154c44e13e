#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "qmod/sim/sampling.hpp"
#include "qmod/sim/statevector.hpp"

using namespace qmod;
using namespace qmod::sim;
using ir::Event;
using ir::Gate;
using ir::GateKind;

namespace {

ir::Circuit bell() {
  ir::Circuit c;
  c.events.push_back(Event::alloc({0, 1}));
  c.add(Gate::one(GateKind::H, 0));
  c.add(Gate::cx(0, 1));
  c.outputs.push_back({"res", {0, 1}, types::QType::array(types::QType::bit(), 2)});
  return c;
}

Key basis(const StateVector& s, const std::vector<std::pair<ir::QubitId, int>>& bits) {
  std::vector<std::pair<std::vector<ir::QubitId>, BigInt>> a;
  for (auto [q, b] : bits) a.push_back({{q}, BigInt(b)});
  return s.key_for(a);
}

}  // namespace

TEST(Run, BellAmplitudes) {
  auto r = run(bell());
  const auto& s = r.state;
  EXPECT_NEAR(std::abs(s.amplitude(basis(s, {{0, 0}, {1, 0}})) - M_SQRT1_2), 0, 1e-12);
  EXPECT_NEAR(std::abs(s.amplitude(basis(s, {{0, 1}, {1, 1}})) - M_SQRT1_2), 0, 1e-12);
  EXPECT_NEAR(std::abs(s.amplitude(basis(s, {{0, 1}, {1, 0}}))), 0, 1e-12);
  EXPECT_NEAR(s.norm(), 1.0, 1e-12);
}

TEST(Run, MatchesDenseReferenceOnRandomCircuits) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    ir::Circuit c;
    c.events.push_back(Event::alloc({0, 1, 2, 3, 4, 5}));
    oracle::Dense d(6);
    for (int i = 0; i < 60; ++i) {
      Gate g = oracle::random_gate(rng, 6);
      c.add(g);
      d.apply(g);
    }
    auto r = run(c);
    for (std::uint64_t i = 0; i < 64; ++i) {
      std::vector<std::pair<ir::QubitId, int>> bits;
      for (int q = 0; q < 6; ++q) bits.push_back({static_cast<ir::QubitId>(q), static_cast<int>((i >> q) & 1u)});
      EXPECT_NEAR(std::abs(r.state.amplitude(basis(r.state, bits)) - d[i]), 0, 1e-10);
    }
  }
}

TEST(Run, NonZeroReleaseThrowsWithSpan) {
  ir::Circuit c;
  c.events.push_back(Event::alloc({0}));
  c.add(Gate::one(GateKind::X, 0));
  c.events.push_back(Event::release({0}, SourceSpan{4, 2, 4, 9}));
  try {
    run(c);
    FAIL() << "expected NonZeroRelease";
  } catch (const NonZeroRelease& e) {
    EXPECT_EQ(e.span().line, 4u);
    EXPECT_NEAR(e.probability(), 1.0, 1e-12);
  }
}

TEST(Run, NonStrictReleaseIsRecorded) {
  ir::Circuit c;
  c.events.push_back(Event::alloc({0}));
  c.add(Gate::one(GateKind::H, 0));
  c.events.push_back(Event::release({0}));
  RunOptions o;
  o.strict_release = false;
  auto r = run(c, o);
  ASSERT_EQ(r.release_failures.size(), 1u);
  EXPECT_NEAR(r.max_release_residual, 0.5, 1e-12);
}

TEST(Run, WidthLimit) {
  ir::Circuit c;
  c.events.push_back(Event::alloc({0, 1, 2}));
  RunOptions o;
  o.max_qubits = 2;
  EXPECT_THROW(run(c, o), WidthExceeded);
}

TEST(Run, ReleasedPositionsAreReused) {
  ir::Circuit c;
  for (ir::QubitId q = 0; q < 200; ++q) {
    c.events.push_back(Event::alloc({q}));
    c.add(Gate::one(GateKind::X, q));
    c.add(Gate::one(GateKind::X, q));
    c.events.push_back(Event::release({q}));
  }
  auto r = run(c);
  EXPECT_EQ(r.peak_width, 1u);
  EXPECT_EQ(r.releases, 200u);
}

TEST(Run, MarkerFlagsDirtyUnboundQubits) {
  ir::Circuit c;
  c.events.push_back(Event::alloc({0, 1}));
  c.add(Gate::one(GateKind::X, 1));
  c.events.push_back(Event::marker("line 3", {0}));
  c.events.push_back(Event::marker("line 4", {0, 1}));
  auto r = run(c);
  ASSERT_EQ(r.hygiene.size(), 1u);
  EXPECT_EQ(r.hygiene[0].label, "line 3");
}

TEST(Phases, UniformStateHasNoRelativePhase) {
  ir::Circuit c;
  c.events.push_back(Event::alloc({0, 1}));
  c.add(Gate::one(GateKind::H, 0));
  c.add(Gate::one(GateKind::H, 1));
  auto r = run(c);
  for (const auto& [k, ph] : relative_phases(r.state, basis(r.state, {{0, 0}, {1, 0}}))) EXPECT_NEAR(ph, 0, 1e-12);
}

TEST(Phases, ZeroReferenceIsAnError) {
  auto r = run(bell());
  EXPECT_THROW(relative_phases(r.state, basis(r.state, {{0, 1}, {1, 0}})), ZeroReference);
}

TEST(Marginal, ConstantAmplitude) {
  ir::Circuit c;
  c.events.push_back(Event::alloc({0, 1}));
  c.add(Gate::one(GateKind::RY, 1, 2 * std::asin(0.6)));
  auto r = run(c);
  EXPECT_NEAR(marginal_amplitude(r.state, {1}, 1).real(), 0.6, 1e-12);
  EXPECT_NEAR(marginal_amplitude(r.state, {1}, 0).real(), 0.8, 1e-12);
}

TEST(Marginal, DiagonalCircuitPreservesMagnitudes) {
  std::mt19937_64 rng(4);
  ir::Circuit c;
  c.events.push_back(Event::alloc({0, 1, 2, 3}));
  for (ir::QubitId q = 0; q < 4; ++q) c.add(Gate::one(GateKind::H, q));
  std::uniform_real_distribution<double> ang(-3, 3);
  for (int i = 0; i < 20; ++i) {
    Gate g = oracle::random_gate(rng, 4);
    if (!ir::is_diagonal(g.kind)) continue;
    c.add(g);
  }
  auto r = run(c);
  for (const auto& e : r.state.entries()) EXPECT_NEAR(std::abs(e.amp), 0.25, 1e-12);
}

TEST(Sampling, SameSeedSameCounts) {
  auto r = run(bell());
  auto a = sample(r.state, bell().outputs, 1000, 42);
  auto b = sample(r.state, bell().outputs, 1000, 42);
  EXPECT_EQ(a.variables[0].counts, b.variables[0].counts);
}

TEST(Sampling, BellWithinThreeSigma) {
  auto r = run(bell());
  auto s = sample(r.state, bell().outputs, 4096, 7);
  const auto& counts = s.variables[0].counts;
  ASSERT_EQ(counts.size(), 2u);
  for (const auto& [v, n] : counts) EXPECT_NEAR(static_cast<double>(n), 2048.0, 3 * 32.0) << v;
}

TEST(Sampling, DeterministicStateGivesOneValue) {
  ir::Circuit c;
  c.events.push_back(Event::alloc({0, 1}));
  c.add(Gate::one(GateKind::X, 1));
  c.outputs.push_back({"x", {0, 1}, types::QType::num(types::FixedPointFormat(2, false, 1))});
  auto r = run(c);
  auto s = sample(r.state, c.outputs, 100, 1);
  ASSERT_EQ(s.variables[0].counts.size(), 1u);
  EXPECT_EQ(s.variables[0].counts.at("1"), 100u);
}

TEST(Decode, FormatsAndStructures) {
  using types::FixedPointFormat;
  using types::QType;
  EXPECT_EQ(decode_value(15, QType::num(FixedPointFormat(4, false, 3))), "1.875");
  EXPECT_EQ(decode_value(2, QType::num(FixedPointFormat(2, true, 1))), "-1");
  EXPECT_EQ(decode_value(0b100111, QType::array(QType::num(FixedPointFormat(2, false, 0)), 3)), "[3, 1, 2]");
  QType rec = QType::record("R", {{"a", std::make_shared<QType>(QType::bit())},
                                   {"b", std::make_shared<QType>(QType::num(FixedPointFormat(2, false, 0)))}});
  EXPECT_EQ(decode_value(0b101, rec), "{a: 1, b: 2}");
}
