#include <gtest/gtest.h>

#include "qmod/driver/pipeline.hpp"
#include "qmod/frontend/parser.hpp"
#include "qmod/sema/analyze.hpp"

using namespace qmod;
using namespace qmod::sema;

namespace {

struct Analyzed {
  frontend::Program ast;
  AnalysisResult result;
};

Analyzed analyze_src(const std::string& src, AnalysisOptions o = {}) {
  Analyzed a;
  a.ast = frontend::parse_source(src);
  a.result = analyze(a.ast, o);
  return a;
}

std::string corpus(const std::string& name) { return driver::read_file(std::string(QMOD_CORPUS_DIR) + "/" + name); }

const Var* output(const TypedProgram& p, const std::string& name) {
  for (VarId v : p.outputs)
    if (p.var(v).name == name) return &p.var(v);
  return nullptr;
}

bool mentions(const DiagnosticList& d, const std::string& text, Severity sev) {
  for (const auto& x : d.items())
    if (x.severity == sev && x.message.find(text) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Sema, DigitalArithmeticInfersResFormat) {
  auto a = analyze_src(corpus("digital_arith.qmod"));
  ASSERT_FALSE(a.result.diagnostics.has_errors()) << a.result.diagnostics.format("digital_arith");
  const Var* res = output(a.result.program, "res");
  ASSERT_TRUE(res && res->type);
  EXPECT_EQ(res->type->format(), types::FixedPointFormat(4, false, 3));
}

TEST(Sema, ConstantAssignmentInfersSmallestFormat) {
  auto a = analyze_src("qfunc main(res: output qnum) { res |= 3; }");
  ASSERT_FALSE(a.result.diagnostics.has_errors());
  EXPECT_EQ(output(a.result.program, "res")->type->format(), types::FixedPointFormat(2, false, 0));
}

TEST(Sema, StructFieldPassedAsPackedQubitArray) {
  auto a = analyze_src(corpus("struct_sum.qmod"));
  EXPECT_FALSE(a.result.diagnostics.has_errors()) << a.result.diagnostics.format("struct_sum");
}

TEST(Sema, SizeMismatchIsAnError) {
  auto a = analyze_src(R"(
qfunc two(q: qarray[qbit, 2]) { H(q[0]); }
qfunc main(x: output qnum[3]) {
  allocate(x);
  two(x);
}
)");
  EXPECT_TRUE(a.result.diagnostics.has_errors());
}

TEST(Sema, LambdaCapturesEnclosingVariable) {
  auto a = analyze_src(corpus("flip_phase.qmod"));
  EXPECT_FALSE(a.result.diagnostics.has_errors()) << a.result.diagnostics.format("flip_phase");
}

TEST(Sema, UnknownNameIsPositioned) {
  auto a = analyze_src("qfunc main(x: output qbit) {\n  allocate(x);\n  H(y);\n}");
  ASSERT_TRUE(a.result.diagnostics.has_errors());
  EXPECT_EQ(a.result.diagnostics.items().front().span.line, 3u);
}

TEST(Sema, MainMayNotTakeQuantumInputs) {
  auto a = analyze_src("qfunc main(x: qbit) { H(x); }");
  EXPECT_TRUE(a.result.diagnostics.has_errors());
}

TEST(InitFlow, WithinVariableIsReleasedAfterStatement) {
  auto a = analyze_src(R"(
qfunc main(x: output qnum[2]) {
  allocate(x);
  aux: qbit;
  within {
    allocate(aux);
    aux ^= x == 3;
  } apply {
    Z(aux);
  }
  allocate(aux);
  H(aux);
}
)");
  EXPECT_FALSE(a.result.diagnostics.has_errors()) << a.result.diagnostics.format("t");
}

TEST(InitFlow, DoubleInitialization) {
  auto a = analyze_src("qfunc main(res: output qnum) {\n  res |= 1;\n  res |= 1;\n}");
  ASSERT_TRUE(a.result.diagnostics.has_errors());
  EXPECT_TRUE(mentions(a.result.diagnostics, "already initialized", Severity::Error));
  EXPECT_EQ(a.result.diagnostics.items().front().span.line, 3u);
}

TEST(InitFlow, OutputNeverInitialized) {
  auto a = analyze_src("qfunc main(res: output qnum[2]) { }");
  EXPECT_TRUE(mentions(a.result.diagnostics, "not initialized", Severity::Error));
}

TEST(InitFlow, UseBeforeInit) {
  auto a = analyze_src("qfunc main(res: output qbit) {\n  H(res);\n  allocate(res);\n}");
  EXPECT_TRUE(mentions(a.result.diagnostics, "before it is initialized", Severity::Error));
}

TEST(InitFlow, InitializationInsideControlIsRejected) {
  auto a = analyze_src(R"(
qfunc main(c: output qbit, t: output qbit) {
  allocate(c);
  control(c) {
    allocate(t);
  }
}
)");
  EXPECT_TRUE(a.result.diagnostics.has_errors());
}

TEST(WithinApply, PiecewiseProgramIsAccepted) {
  AnalysisOptions o;
  o.constants["NUM_SEGS"] = Rational(4);
  o.arguments["p"] = Rational(5);
  std::vector<frontend::ClassicalValue> coefs(4, frontend::ClassicalValue(Rational(1, 4)));
  o.arguments["a_coefs"] = coefs;
  o.arguments["b_coefs"] = coefs;
  auto a = analyze_src(corpus("piecewise_tanh.qmod"), o);
  EXPECT_FALSE(a.result.diagnostics.has_errors()) << a.result.diagnostics.format("piecewise");
}

TEST(WithinApply, ModifyingWithinVariableWarns) {
  auto a = analyze_src(R"(
qfunc main(x: output qnum[2]) {
  allocate(x);
  t: qnum[2];
  within {
    allocate(t);
  } apply {
    t ^= x;
  }
}
)");
  EXPECT_FALSE(a.result.diagnostics.has_errors());
  EXPECT_TRUE(mentions(a.result.diagnostics, "modified in the apply block", Severity::Warning));
}

TEST(WithinApply, EmptyWithinIsAccepted) {
  auto a = analyze_src(R"(
qfunc main(x: output qbit) {
  allocate(x);
  within {
  } apply {
    H(x);
  }
}
)");
  EXPECT_FALSE(a.result.diagnostics.has_errors());
  EXPECT_TRUE(a.result.diagnostics.empty());
}

TEST(Sema, LeakedLocalWarns) {
  auto a = analyze_src(R"(
qfunc f(x: qbit) {
  t: qbit;
  allocate(t);
  CX(x, t);
}
qfunc main(x: output qbit) {
  allocate(x);
  f(x);
}
)");
  EXPECT_FALSE(a.result.diagnostics.has_errors());
  EXPECT_TRUE(mentions(a.result.diagnostics, "still initialized", Severity::Warning));
}

TEST(Sema, RecursionIsRejected) {
  auto a = analyze_src("qfunc f(x: qbit) { f(x); }\nqfunc main(x: output qbit) { allocate(x); f(x); }");
  EXPECT_TRUE(a.result.diagnostics.has_errors());
}

TEST(Sema, AllCorpusProgramsAnalyze) {
  AnalysisOptions o;
  o.constants["NUM_SEGS"] = Rational(4);
  o.constants["NUM_LAYERS"] = Rational(1);
  o.arguments["p"] = Rational(5);
  std::vector<frontend::ClassicalValue> coefs(4, frontend::ClassicalValue(Rational(1, 4)));
  o.arguments["a_coefs"] = coefs;
  o.arguments["b_coefs"] = coefs;
  o.arguments["gammas"] = std::vector<frontend::ClassicalValue>{Rational(1, 10)};
  o.arguments["betas"] = std::vector<frontend::ClassicalValue>{Rational(0)};
  for (const char* f : {"bell", "struct_sum", "flip_phase", "sorted_oracle", "digital_arith", "phase_square", "tanh_amp",
                        "piecewise_tanh", "knapsack_qaoa"}) {
    auto a = analyze_src(corpus(std::string(f) + ".qmod"), o);
    EXPECT_FALSE(a.result.diagnostics.has_errors()) << f << "\n" << a.result.diagnostics.format(f);
  }
}
