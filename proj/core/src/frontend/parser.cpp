#include "qmod/frontend/parser.hpp"

#include "qmod/frontend/lexer.hpp"

namespace qmod::frontend {

namespace {

constexpr int kMaxDepth = 200;

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {
    if (toks_.empty() || toks_.back().kind != TokenKind::End)
      throw ParseError("token stream is not terminated", {});
  }

  Program program() {
    Program prog;
    while (!at(TokenKind::End)) {
      if (at(TokenKind::KwQstruct)) {
        prog.records.push_back(record_def());
      } else if (at(TokenKind::KwQfunc)) {
        prog.funcs.push_back(func_def());
      } else {
        fail("expected 'qfunc' or 'qstruct'");
      }
    }
    return prog;
  }

  ExprPtr lone_expression() {
    auto e = expr();
    expect(TokenKind::End, "end of expression");
    return e;
  }

 private:
  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p(p) {
      if (++p.depth_ > kMaxDepth) p.fail("nesting too deep");
    }
    ~DepthGuard() { --p.depth_; }
    Parser& p;
  };

  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(std::size_t ahead = 1) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(TokenKind k) const { return cur().kind == k; }
  bool accept(TokenKind k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  const Token& advance() {
    const Token& t = cur();
    if (t.kind != TokenKind::End) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    std::string found = at(TokenKind::End) ? "end of input" : "'" + cur().text + "'";
    throw ParseError(expected + ", found " + found, cur().span);
  }

  const Token& expect(TokenKind k, const std::string& what = {}) {
    if (!at(k)) fail("expected " + (what.empty() ? std::string(to_string(k)) : what));
    return advance();
  }

  SourceSpan span_since(const SourceSpan& start) const {
    const Token& last = toks_[pos_ == 0 ? 0 : pos_ - 1];
    return SourceSpan::merge(start, last.span);
  }

  RecordDef record_def() {
    RecordDef r;
    SourceSpan start = advance().span;
    r.name = expect(TokenKind::Identifier, "record name").text;
    expect(TokenKind::LBrace);
    while (!accept(TokenKind::RBrace)) {
      RecordField f;
      const Token& name = expect(TokenKind::Identifier, "field name");
      f.name = name.text;
      expect(TokenKind::Colon);
      f.type = qtype();
      expect(TokenKind::Semicolon);
      f.span = span_since(name.span);
      r.fields.push_back(std::move(f));
    }
    r.span = span_since(start);
    return r;
  }

  FuncDecl func_def() {
    FuncDecl f;
    SourceSpan start = advance().span;
    f.name = expect(TokenKind::Identifier, "function name").text;
    expect(TokenKind::LParen);
    if (!at(TokenKind::RParen)) {
      do {
        f.params.push_back(param());
      } while (accept(TokenKind::Comma));
    }
    expect(TokenKind::RParen);
    f.body = block();
    f.span = span_since(start);
    return f;
  }

  Param param() {
    Param p;
    const Token& name = expect(TokenKind::Identifier, "parameter name");
    p.name = name.text;
    expect(TokenKind::Colon);
    p.is_output = accept(TokenKind::KwOutput);
    switch (cur().kind) {
      case TokenKind::KwInt:
      case TokenKind::KwReal:
      case TokenKind::KwArray:
        p.type = ctype();
        break;
      case TokenKind::KwQfunc:
        p.type = fn_type();
        break;
      default:
        p.type = qtype();
        break;
    }
    p.span = span_since(name.span);
    return p;
  }

  FnTypeExpr fn_type() {
    FnTypeExpr f;
    SourceSpan start = advance().span;
    expect(TokenKind::LParen);
    if (!at(TokenKind::RParen)) {
      do {
        f.params.push_back(qtype());
      } while (accept(TokenKind::Comma));
    }
    expect(TokenKind::RParen);
    f.span = span_since(start);
    return f;
  }

  QTypeExpr qtype() {
    DepthGuard guard(*this);
    QTypeExpr t;
    SourceSpan start = cur().span;
    if (accept(TokenKind::KwQbit)) {
      t.kind = QTypeExpr::Kind::Bit;
    } else if (accept(TokenKind::KwQnum)) {
      t.kind = QTypeExpr::Kind::Num;
      if (accept(TokenKind::LBracket)) {
        t.size = expr();
        if (accept(TokenKind::Comma)) {
          if (accept(TokenKind::KwSigned)) {
            t.is_signed = true;
          } else if (accept(TokenKind::KwUnsigned)) {
            t.is_signed = false;
          } else {
            fail("expected 'signed' or 'unsigned'");
          }
          expect(TokenKind::Comma);
          t.fraction_digits = expr();
        }
        expect(TokenKind::RBracket);
      }
    } else if (accept(TokenKind::KwQarray)) {
      t.kind = QTypeExpr::Kind::Array;
      expect(TokenKind::LBracket);
      t.element = std::make_unique<QTypeExpr>(qtype());
      if (accept(TokenKind::Comma)) t.length = expr();
      expect(TokenKind::RBracket);
    } else if (at(TokenKind::Identifier)) {
      t.kind = QTypeExpr::Kind::Named;
      t.name = advance().text;
    } else {
      fail("expected quantum type");
    }
    t.span = span_since(start);
    return t;
  }

  CTypeExpr ctype() {
    DepthGuard guard(*this);
    CTypeExpr t;
    SourceSpan start = cur().span;
    if (accept(TokenKind::KwInt)) {
      t.kind = CTypeExpr::Kind::Int;
    } else if (accept(TokenKind::KwReal)) {
      t.kind = CTypeExpr::Kind::Real;
    } else if (accept(TokenKind::KwArray)) {
      t.kind = CTypeExpr::Kind::Array;
      expect(TokenKind::LBracket);
      t.element = std::make_unique<CTypeExpr>(ctype());
      if (accept(TokenKind::Comma)) t.length = expr();
      expect(TokenKind::RBracket);
    } else {
      fail("expected classical type");
    }
    t.span = span_since(start);
    return t;
  }

  Block block() {
    DepthGuard guard(*this);
    expect(TokenKind::LBrace);
    Block b;
    while (!accept(TokenKind::RBrace)) {
      if (at(TokenKind::End)) fail("expected '}'");
      b.push_back(statement());
    }
    return b;
  }

  Stmt statement() {
    DepthGuard guard(*this);
    SourceSpan start = cur().span;
    Stmt s;
    switch (cur().kind) {
      case TokenKind::KwAllocate: {
        advance();
        expect(TokenKind::LParen);
        AllocateStmt a;
        auto first = expr();
        if (accept(TokenKind::Comma)) {
          a.size = std::move(first);
          a.target = path();
        } else {
          if (first->kind != ExprKind::PathRef)
            throw ParseError("allocate target must be a variable path", first->span);
          a.target = std::move(first->path);
        }
        expect(TokenKind::RParen);
        expect(TokenKind::Semicolon);
        s.node = std::move(a);
        break;
      }
      case TokenKind::KwPhase: {
        advance();
        expect(TokenKind::LParen);
        PhaseStmt p;
        p.expr = expr();
        expect(TokenKind::Comma);
        p.angle = expr();
        expect(TokenKind::RParen);
        expect(TokenKind::Semicolon);
        s.node = std::move(p);
        break;
      }
      case TokenKind::KwAssignAmplitude: {
        advance();
        expect(TokenKind::LParen);
        AmplitudeStmt a;
        a.expr = expr();
        expect(TokenKind::Comma);
        a.indicator = path();
        expect(TokenKind::RParen);
        expect(TokenKind::Semicolon);
        s.node = std::move(a);
        break;
      }
      case TokenKind::KwControl: {
        advance();
        expect(TokenKind::LParen);
        ControlStmt c;
        c.condition = expr();
        expect(TokenKind::RParen);
        c.body = block();
        s.node = std::move(c);
        break;
      }
      case TokenKind::KwRepeat: {
        advance();
        expect(TokenKind::LParen);
        RepeatStmt r;
        r.iterator = expect(TokenKind::Identifier, "iteration variable").text;
        expect(TokenKind::Comma);
        r.count = expr();
        expect(TokenKind::RParen);
        r.body = block();
        s.node = std::move(r);
        break;
      }
      case TokenKind::KwWithin: {
        advance();
        WithinApplyStmt w;
        w.within = block();
        expect(TokenKind::KwApply);
        w.apply = block();
        s.node = std::move(w);
        break;
      }
      case TokenKind::KwInvert: {
        advance();
        s.node = InvertStmt{block()};
        break;
      }
      case TokenKind::KwPower: {
        advance();
        expect(TokenKind::LParen);
        PowerStmt p;
        p.exponent = expr();
        expect(TokenKind::RParen);
        p.body = block();
        s.node = std::move(p);
        break;
      }
      case TokenKind::Identifier: {
        if (peek().kind == TokenKind::Colon) {
          DeclStmt d;
          d.name = advance().text;
          advance();
          d.type = qtype();
          expect(TokenKind::Semicolon);
          s.node = std::move(d);
        } else if (peek().kind == TokenKind::LParen) {
          CallStmt c;
          c.callee_span = cur().span;
          c.callee = advance().text;
          advance();
          if (!at(TokenKind::RParen)) {
            do {
              c.args.push_back(argument());
            } while (accept(TokenKind::Comma));
          }
          expect(TokenKind::RParen);
          expect(TokenKind::Semicolon);
          s.node = std::move(c);
        } else {
          AssignStmt a;
          a.target = path();
          if (accept(TokenKind::PipeAssign)) {
            a.op = AssignOp::OutOfPlace;
          } else if (accept(TokenKind::CaretAssign)) {
            a.op = AssignOp::InplaceXor;
          } else if (accept(TokenKind::PlusAssign)) {
            a.op = AssignOp::InplaceAdd;
          } else {
            fail("expected '|=', '^=', '+=' or '('");
          }
          a.value = expr();
          expect(TokenKind::Semicolon);
          s.node = std::move(a);
        }
        break;
      }
      default:
        fail("expected statement");
    }
    s.span = span_since(start);
    return s;
  }

  Arg argument() {
    Arg a;
    SourceSpan start = cur().span;
    if (at(TokenKind::Pipe)) {
      auto lam = std::make_unique<Lambda>();
      advance();
      if (!at(TokenKind::Pipe)) {
        do {
          lam->params.push_back(expect(TokenKind::Identifier, "lambda parameter").text);
        } while (accept(TokenKind::Comma));
      }
      expect(TokenKind::Pipe, "'|' closing lambda parameters");
      lam->body = block();
      lam->span = span_since(start);
      a.value = std::move(lam);
    } else {
      a.value = expr();
    }
    a.span = span_since(start);
    return a;
  }

  Path path() {
    Path p;
    const Token& root = expect(TokenKind::Identifier, "variable name");
    p.root = root.text;
    for (;;) {
      if (accept(TokenKind::Dot)) {
        PathElem el;
        const Token& f = expect(TokenKind::Identifier, "field name");
        el.kind = PathElem::Kind::Field;
        el.field = f.text;
        el.span = f.span;
        p.elems.push_back(std::move(el));
      } else if (at(TokenKind::LBracket)) {
        SourceSpan s = advance().span;
        PathElem el;
        el.kind = PathElem::Kind::Index;
        el.index = expr();
        expect(TokenKind::RBracket);
        el.span = span_since(s);
        p.elems.push_back(std::move(el));
      } else {
        break;
      }
    }
    p.span = span_since(root.span);
    return p;
  }

  // Binary levels from loosest to tightest.
  enum class Level { Or, And, BitOr, BitXor, BitAnd, Rel, Shift, Add, Mul };

  ExprPtr expr() { return binary(Level::Or); }

  bool match_level(Level level, BinaryOp& op) const {
    switch (level) {
      case Level::Or:
        if (at(TokenKind::KwOr)) { op = BinaryOp::LogOr; return true; }
        return false;
      case Level::And:
        if (at(TokenKind::KwAnd)) { op = BinaryOp::LogAnd; return true; }
        return false;
      case Level::BitOr:
        if (at(TokenKind::Pipe)) { op = BinaryOp::BitOr; return true; }
        return false;
      case Level::BitXor:
        if (at(TokenKind::Caret)) { op = BinaryOp::BitXor; return true; }
        return false;
      case Level::BitAnd:
        if (at(TokenKind::Amp)) { op = BinaryOp::BitAnd; return true; }
        return false;
      case Level::Rel:
        switch (cur().kind) {
          case TokenKind::Less: op = BinaryOp::Lt; return true;
          case TokenKind::LessEq: op = BinaryOp::Le; return true;
          case TokenKind::Greater: op = BinaryOp::Gt; return true;
          case TokenKind::GreaterEq: op = BinaryOp::Ge; return true;
          case TokenKind::EqEq: op = BinaryOp::Eq; return true;
          case TokenKind::NotEq: op = BinaryOp::Ne; return true;
          default: return false;
        }
      case Level::Shift:
        if (at(TokenKind::Shl)) { op = BinaryOp::Shl; return true; }
        if (at(TokenKind::Shr)) { op = BinaryOp::Shr; return true; }
        return false;
      case Level::Add:
        if (at(TokenKind::Plus)) { op = BinaryOp::Add; return true; }
        if (at(TokenKind::Minus)) { op = BinaryOp::Sub; return true; }
        return false;
      case Level::Mul:
        if (at(TokenKind::Star)) { op = BinaryOp::Mul; return true; }
        if (at(TokenKind::Slash)) { op = BinaryOp::Div; return true; }
        return false;
    }
    return false;
  }

  ExprPtr operand(Level level) {
    if (level == Level::Mul) return power();
    return binary(static_cast<Level>(static_cast<int>(level) + 1));
  }

  ExprPtr binary(Level level) {
    DepthGuard guard(*this);
    ExprPtr lhs = operand(level);
    BinaryOp op;
    while (match_level(level, op)) {
      advance();
      ExprPtr rhs = operand(level);
      SourceSpan span = SourceSpan::merge(lhs->span, rhs->span);
      lhs = make_binary(op, std::move(lhs), std::move(rhs), span);
    }
    return lhs;
  }

  ExprPtr power() {
    DepthGuard guard(*this);
    ExprPtr base = unary();
    if (accept(TokenKind::StarStar)) {
      ExprPtr exp = power();
      SourceSpan span = SourceSpan::merge(base->span, exp->span);
      return make_binary(BinaryOp::Pow, std::move(base), std::move(exp), span);
    }
    return base;
  }

  ExprPtr unary() {
    DepthGuard guard(*this);
    SourceSpan start = cur().span;
    if (accept(TokenKind::Minus)) {
      auto e = unary();
      return make_unary(UnaryOp::Neg, std::move(e), span_since(start));
    }
    if (accept(TokenKind::Plus)) return unary();
    if (accept(TokenKind::Tilde)) {
      auto e = unary();
      return make_unary(UnaryOp::BitNot, std::move(e), span_since(start));
    }
    if (accept(TokenKind::KwNot)) {
      auto e = unary();
      return make_unary(UnaryOp::LogNot, std::move(e), span_since(start));
    }
    return primary();
  }

  ExprPtr primary() {
    SourceSpan start = cur().span;
    if (at(TokenKind::Number)) {
      const Token& t = advance();
      Rational value;
      try {
        value = parse_decimal(t.text);
      } catch (const std::exception&) {
        throw ParseError("numeric literal '" + t.text + "' is out of range", t.span);
      }
      return make_number(std::move(value), t.text, t.span);
    }
    if (accept(TokenKind::LParen)) {
      auto e = expr();
      expect(TokenKind::RParen);
      return e;
    }
    if (at(TokenKind::Identifier)) {
      if (peek().kind == TokenKind::LParen) {
        auto e = std::make_unique<Expr>();
        e->kind = ExprKind::Call;
        e->callee = advance().text;
        advance();
        if (!at(TokenKind::RParen)) {
          do {
            e->operands.push_back(expr());
          } while (accept(TokenKind::Comma));
        }
        expect(TokenKind::RParen);
        e->span = span_since(start);
        return e;
      }
      return make_path(path());
    }
    fail("expected expression");
  }

  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

Program parse(const std::vector<Token>& tokens) { return Parser(tokens).program(); }

Program parse_source(std::string_view source) { return parse(tokenize(source)); }

ExprPtr parse_expression(std::string_view source) {
  auto toks = tokenize(source);
  return Parser(toks).lone_expression();
}

}  // namespace qmod::frontend
