#include <gtest/gtest.h>

#include "qmod/frontend/classical.hpp"
#include "qmod/frontend/lexer.hpp"
#include "qmod/frontend/parser.hpp"
#include "qmod/frontend/printer.hpp"

using namespace qmod;
using namespace qmod::frontend;

namespace {

std::vector<TokenKind> kinds(const std::string& src) {
  std::vector<TokenKind> out;
  for (const auto& t : tokenize(src)) out.push_back(t.kind);
  return out;
}

const char* kBell = R"(
qfunc bell(qba: qarray[qbit, 2]) {
  H(qba[0]);
  CX(qba[0], qba[1]);
}

qfunc main(res: output qarray[qbit, 2]) {
  allocate(res);
  bell(res);
}
)";

}  // namespace

TEST(Lexer, KeywordsAndPunctuation) {
  EXPECT_EQ(kinds("qfunc main()"), (std::vector<TokenKind>{TokenKind::KwQfunc, TokenKind::Identifier,
                                                            TokenKind::LParen, TokenKind::RParen, TokenKind::End}));
}

TEST(Lexer, DecimalNumberIsExact) {
  auto toks = tokenize("0.8125");
  ASSERT_EQ(toks.size(), 2u);
  EXPECT_EQ(toks[0].kind, TokenKind::Number);
  EXPECT_EQ(toks[0].text, "0.8125");
}

TEST(Lexer, InvalidCharacterHasPosition) {
  try {
    tokenize("x |= 3 @");
    FAIL() << "expected LexError";
  } catch (const LexError& e) {
    EXPECT_EQ(e.span().line, 1u);
    EXPECT_EQ(e.span().column, 8u);
  }
}

TEST(Lexer, CompoundOperators) {
  EXPECT_EQ(kinds("|= ^= += ** <= != <<"),
            (std::vector<TokenKind>{TokenKind::PipeAssign, TokenKind::CaretAssign, TokenKind::PlusAssign,
                                    TokenKind::StarStar, TokenKind::LessEq, TokenKind::NotEq, TokenKind::Shl,
                                    TokenKind::End}));
}

TEST(Lexer, CommentsAreSkipped) { EXPECT_EQ(kinds("// all of this\nx"), (std::vector<TokenKind>{TokenKind::Identifier, TokenKind::End})); }

TEST(Parser, BellProgram) {
  Program p = parse_source(kBell);
  ASSERT_EQ(p.funcs.size(), 2u);
  const FuncDecl* bell = p.find_func("bell");
  ASSERT_NE(bell, nullptr);
  ASSERT_EQ(bell->params.size(), 1u);
  EXPECT_FALSE(bell->params[0].is_output);
  const auto& t = std::get<QTypeExpr>(bell->params[0].type);
  EXPECT_EQ(t.kind, QTypeExpr::Kind::Array);
  EXPECT_EQ(t.element->kind, QTypeExpr::Kind::Bit);
  const FuncDecl* main = p.find_func("main");
  ASSERT_NE(main, nullptr);
  EXPECT_TRUE(main->params[0].is_output);
  EXPECT_EQ(main->body.size(), 2u);
}

TEST(Parser, AssignmentTreeShape) {
  Program p = parse_source("qfunc main(res: output qnum) { res |= 0.25*a*b + 1.5; }");
  const auto& s = std::get<AssignStmt>(p.funcs[0].body[0].node);
  EXPECT_EQ(s.op, AssignOp::OutOfPlace);
  EXPECT_EQ(dump(*s.value), "add(mul(mul(0.25, a), b), 1.5)");
}

TEST(Parser, PhaseStatement) {
  Program p = parse_source("qfunc main(x: output qnum[2]) { phase(x**2, pi/4); }");
  const auto& s = std::get<PhaseStmt>(p.funcs[0].body[0].node);
  EXPECT_EQ(dump(*s.expr), "pow(x, 2)");
  EXPECT_EQ(dump(*s.angle), "div(pi, 4)");
}

TEST(Parser, PrecedenceOfLogicalAndRelational) {
  EXPECT_EQ(dump(*parse_expression("a < b & b < c")), "bitand(lt(a, b), lt(b, c))");
  EXPECT_EQ(dump(*parse_expression("a or b and c")), "or(a, and(b, c))");
  EXPECT_EQ(dump(*parse_expression("-x**2")), "pow(neg(x), 2)");
}

TEST(Parser, ErrorCarriesPosition) {
  try {
    parse_source("qfunc main() {\n  H(q;\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span().line, 2u);
  }
}

TEST(Parser, DeepNestingIsRejectedCleanly) {
  std::string deep(500, '(');
  deep += "1";
  deep += std::string(500, ')');
  EXPECT_THROW(parse_expression(deep), ParseError);
}

TEST(Printer, RoundTripIsStable) {
  Program p = parse_source(kBell);
  std::string once = pretty_print(p);
  Program again = parse_source(once);
  EXPECT_EQ(dump(p), dump(again));
  EXPECT_EQ(once, pretty_print(again));
}

TEST(Classical, Arithmetic) {
  MapEnv env;
  EXPECT_EQ(eval_classical(*parse_expression("2+3"), env), Rational(5));
  EXPECT_NEAR(to_double(eval_classical(*parse_expression("pi/4"), env)), 0.7853981633974483, 1e-15);
}

TEST(Classical, ArrayIndex) {
  MapEnv env;
  env.bind("a_coefs", ClassicalValue(std::vector<ClassicalValue>{Rational(1, 2), Rational(3, 4), Rational(5)}));
  EXPECT_EQ(eval_classical(*parse_expression("a_coefs[1]"), env), Rational(3, 4));
}

TEST(Classical, UnknownNameFails) {
  MapEnv env;
  EXPECT_THROW(eval_classical(*parse_expression("nope + 1"), env), EvalError);
}
