#include "qmod/frontend/ast.hpp"

namespace qmod::frontend {

const char* to_string(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return "neg";
    case UnaryOp::BitNot: return "bitnot";
    case UnaryOp::LogNot: return "lognot";
  }
  return "?";
}

const char* to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "add";
    case BinaryOp::Sub: return "sub";
    case BinaryOp::Mul: return "mul";
    case BinaryOp::Div: return "div";
    case BinaryOp::Pow: return "pow";
    case BinaryOp::Shl: return "shl";
    case BinaryOp::Shr: return "shr";
    case BinaryOp::Lt: return "lt";
    case BinaryOp::Le: return "le";
    case BinaryOp::Gt: return "gt";
    case BinaryOp::Ge: return "ge";
    case BinaryOp::Eq: return "eq";
    case BinaryOp::Ne: return "ne";
    case BinaryOp::BitAnd: return "bitand";
    case BinaryOp::BitXor: return "bitxor";
    case BinaryOp::BitOr: return "bitor";
    case BinaryOp::LogAnd: return "and";
    case BinaryOp::LogOr: return "or";
  }
  return "?";
}

const char* spelling(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return "-";
    case UnaryOp::BitNot: return "~";
    case UnaryOp::LogNot: return "not ";
  }
  return "?";
}

const char* spelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Pow: return "**";
    case BinaryOp::Shl: return "<<";
    case BinaryOp::Shr: return ">>";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::BitAnd: return "&";
    case BinaryOp::BitXor: return "^";
    case BinaryOp::BitOr: return "|";
    case BinaryOp::LogAnd: return "and";
    case BinaryOp::LogOr: return "or";
  }
  return "?";
}

bool is_relational(BinaryOp op) {
  switch (op) {
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
    case BinaryOp::Eq:
    case BinaryOp::Ne:
      return true;
    default:
      return false;
  }
}

const char* spelling(AssignOp op) {
  switch (op) {
    case AssignOp::OutOfPlace: return "|=";
    case AssignOp::InplaceXor: return "^=";
    case AssignOp::InplaceAdd: return "+=";
  }
  return "?";
}

ExprPtr make_number(Rational value, std::string text, SourceSpan span) {
  auto e = std::make_unique<Expr>();
  e->kind = ExprKind::Number;
  e->number = std::move(value);
  e->number_text = std::move(text);
  e->span = span;
  return e;
}

ExprPtr make_path(Path path) {
  auto e = std::make_unique<Expr>();
  e->kind = ExprKind::PathRef;
  e->span = path.span;
  e->path = std::move(path);
  return e;
}

ExprPtr make_unary(UnaryOp op, ExprPtr operand, SourceSpan span) {
  auto e = std::make_unique<Expr>();
  e->kind = ExprKind::Unary;
  e->unary_op = op;
  e->span = span;
  e->operands.push_back(std::move(operand));
  return e;
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourceSpan span) {
  auto e = std::make_unique<Expr>();
  e->kind = ExprKind::Binary;
  e->binary_op = op;
  e->span = span;
  e->operands.push_back(std::move(lhs));
  e->operands.push_back(std::move(rhs));
  return e;
}

Path clone(const Path& p) {
  Path out;
  out.root = p.root;
  out.span = p.span;
  for (const auto& el : p.elems) {
    PathElem c;
    c.kind = el.kind;
    c.field = el.field;
    c.span = el.span;
    if (el.index) c.index = clone(*el.index);
    out.elems.push_back(std::move(c));
  }
  return out;
}

ExprPtr clone(const Expr& e) {
  auto out = std::make_unique<Expr>();
  out->kind = e.kind;
  out->span = e.span;
  out->number = e.number;
  out->number_text = e.number_text;
  out->path = clone(e.path);
  out->unary_op = e.unary_op;
  out->binary_op = e.binary_op;
  out->callee = e.callee;
  for (const auto& o : e.operands) out->operands.push_back(clone(*o));
  return out;
}

const Expr* Arg::expr() const {
  if (auto p = std::get_if<ExprPtr>(&value)) return p->get();
  return nullptr;
}

const Lambda* Arg::lambda() const {
  if (auto p = std::get_if<std::unique_ptr<Lambda>>(&value)) return p->get();
  return nullptr;
}

const FuncDecl* Program::find_func(const std::string& name) const {
  for (const auto& f : funcs)
    if (f.name == name) return &f;
  return nullptr;
}

const RecordDef* Program::find_record(const std::string& name) const {
  for (const auto& r : records)
    if (r.name == name) return &r;
  return nullptr;
}

}  // namespace qmod::frontend
