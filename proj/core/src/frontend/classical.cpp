#include "qmod/frontend/classical.hpp"

#include <cmath>
#include <numbers>

namespace qmod::frontend {

std::string ClassicalValue::to_string() const {
  if (!is_array()) return qmod::to_string(scalar());
  std::string s = "[";
  const auto& el = elements();
  for (std::size_t i = 0; i < el.size(); ++i) {
    if (i) s += ", ";
    s += el[i].to_string();
  }
  return s + "]";
}

std::optional<Rational> ClassicalEnv::quantum_attribute(const Path&, std::size_t,
                                                        const std::string&) const {
  return std::nullopt;
}

bool ClassicalEnv::is_quantum(const std::string&) const { return false; }

const ClassicalValue* MapEnv::lookup(const std::string& name) const {
  if (auto it = values_.find(name); it != values_.end()) return &it->second;
  return parent_ ? parent_->lookup(name) : nullptr;
}

std::optional<Rational> MapEnv::quantum_attribute(const Path& path, std::size_t elem_count,
                                                  const std::string& attr) const {
  return parent_ ? parent_->quantum_attribute(path, elem_count, attr) : std::nullopt;
}

bool MapEnv::is_quantum(const std::string& name) const {
  if (values_.count(name)) return false;
  return parent_ && parent_->is_quantum(name);
}

namespace {

Rational require_finite(double d, const SourceSpan& span) {
  if (!std::isfinite(d)) throw EvalError("result is not a finite number", span);
  return from_double(d);
}

std::int64_t to_index(const Rational& v, const SourceSpan& span, const std::string& what) {
  if (!is_integer(v)) throw EvalError(what + " must be an integer, got " + qmod::to_string(v), span);
  BigInt i = numerator(v);
  if (i > BigInt(INT64_MAX) || i < BigInt(INT64_MIN))
    throw EvalError(what + " is out of range", span);
  return i.convert_to<std::int64_t>();
}

ClassicalValue eval_path(const Path& p, const ClassicalEnv& env) {
  // `x.size` / `x.len` on quantum objects (possibly through sub-paths).
  if (!p.elems.empty() && p.elems.back().kind == PathElem::Kind::Field &&
      (p.elems.back().field == "size" || p.elems.back().field == "len")) {
    if (auto attr = env.quantum_attribute(p, p.elems.size() - 1, p.elems.back().field))
      return *attr;
  }
  const ClassicalValue* root = env.lookup(p.root);
  if (!root) {
    if (p.root == "pi" && p.elems.empty()) return from_double(std::numbers::pi);
    if (env.is_quantum(p.root))
      throw EvalError("quantum variable '" + p.root + "' used where a classical value is required",
                      p.span);
    throw EvalError("unbound classical name '" + p.root + "'", p.span);
  }
  ClassicalValue cur = *root;
  for (const auto& el : p.elems) {
    if (el.kind == PathElem::Kind::Field) {
      if (el.field == "len" && cur.is_array()) {
        cur = Rational(static_cast<std::int64_t>(cur.elements().size()));
        continue;
      }
      throw EvalError("classical value has no field '" + el.field + "'", el.span);
    }
    if (!cur.is_array()) throw EvalError("indexing a classical scalar", el.span);
    std::int64_t i = to_index(eval_classical(*el.index, env), el.span, "array index");
    const auto& elems = cur.elements();
    if (i < 0 || i >= static_cast<std::int64_t>(elems.size()))
      throw EvalError("array index " + std::to_string(i) + " out of bounds (length " +
                          std::to_string(elems.size()) + ")",
                      el.span);
    ClassicalValue next = elems[static_cast<std::size_t>(i)];
    cur = std::move(next);
  }
  return cur;
}

Rational eval_call(const Expr& e, const ClassicalEnv& env) {
  std::vector<Rational> args;
  for (const auto& o : e.operands) args.push_back(eval_classical(*o, env));
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw EvalError("'" + e.callee + "' expects " + std::to_string(n) + " argument(s)", e.span);
  };
  const std::string& f = e.callee;
  if (f == "floor") {
    need(1);
    return Rational(floor_int(args[0]));
  }
  if (f == "ceil") {
    need(1);
    return -Rational(floor_int(-args[0]));
  }
  if (f == "abs") {
    need(1);
    return args[0] < 0 ? Rational(-args[0]) : args[0];
  }
  if (f == "log2") {
    need(1);
    if (args[0] <= 0) throw EvalError("log2 of a non-positive value", e.span);
    // Exact for powers of two, including negative powers.
    for (int k = -64; k <= 64; ++k)
      if (args[0] == pow2(k)) return Rational(k);
    return require_finite(std::log2(to_double(args[0])), e.span);
  }
  if (f == "int") {
    need(1);
    BigInt q = numerator(args[0]) / denominator(args[0]);
    return Rational(q);
  }
  double (*fn)(double) = nullptr;
  if (f == "sqrt") fn = [](double x) { return std::sqrt(x); };
  else if (f == "sin") fn = [](double x) { return std::sin(x); };
  else if (f == "cos") fn = [](double x) { return std::cos(x); };
  else if (f == "tan") fn = [](double x) { return std::tan(x); };
  else if (f == "tanh") fn = [](double x) { return std::tanh(x); };
  else if (f == "exp") fn = [](double x) { return std::exp(x); };
  if (!fn) throw EvalError("unknown classical function '" + f + "'", e.span);
  need(1);
  return require_finite(fn(to_double(args[0])), e.span);
}

Rational bitwise(BinaryOp op, const Rational& a, const Rational& b, const SourceSpan& span) {
  if (!is_integer(a) || !is_integer(b))
    throw EvalError("bitwise operators need integer operands", span);
  BigInt x = numerator(a), y = numerator(b);
  switch (op) {
    case BinaryOp::BitAnd: return Rational(BigInt(x & y));
    case BinaryOp::BitOr: return Rational(BigInt(x | y));
    default: return Rational(BigInt(x ^ y));
  }
}

}  // namespace

ClassicalValue eval_classical_value(const Expr& e, const ClassicalEnv& env) {
  if (e.kind == ExprKind::PathRef) return eval_path(e.path, env);
  return eval_classical(e, env);
}

Rational eval_classical(const Expr& e, const ClassicalEnv& env) {
  switch (e.kind) {
    case ExprKind::Number:
      return e.number;
    case ExprKind::PathRef: {
      ClassicalValue v = eval_path(e.path, env);
      if (v.is_array()) throw EvalError("array used where a scalar is required", e.span);
      return v.scalar();
    }
    case ExprKind::Call:
      return eval_call(e, env);
    case ExprKind::Unary: {
      Rational v = eval_classical(*e.operands[0], env);
      switch (e.unary_op) {
        case UnaryOp::Neg:
          return -v;
        case UnaryOp::LogNot:
          return Rational(v == 0 ? 1 : 0);
        case UnaryOp::BitNot:
          if (!is_integer(v)) throw EvalError("bitwise not needs an integer operand", e.span);
          return -v - 1;
      }
      break;
    }
    case ExprKind::Binary: {
      const BinaryOp op = e.binary_op;
      Rational a = eval_classical(*e.operands[0], env);
      if (op == BinaryOp::LogAnd && a == 0) return Rational(0);
      if (op == BinaryOp::LogOr && a != 0) return Rational(1);
      Rational b = eval_classical(*e.operands[1], env);
      switch (op) {
        case BinaryOp::Add: return a + b;
        case BinaryOp::Sub: return a - b;
        case BinaryOp::Mul: return a * b;
        case BinaryOp::Div:
          if (b == 0) throw EvalError("division by zero", e.span);
          return a / b;
        case BinaryOp::Pow: {
          if (is_integer(b) && abs(numerator(b)) <= 4096) {
            std::int64_t k = to_index(b, e.span, "exponent");
            if (k < 0 && a == 0) throw EvalError("zero raised to a negative power", e.span);
            Rational base = k < 0 ? Rational(1) / a : a;
            Rational r = 1;
            for (std::int64_t i = 0; i < std::abs(k); ++i) r *= base;
            return r;
          }
          return require_finite(std::pow(to_double(a), to_double(b)), e.span);
        }
        case BinaryOp::Shl:
        case BinaryOp::Shr: {
          std::int64_t k = to_index(b, e.span, "shift amount");
          if (std::abs(k) > 4096) throw EvalError("shift amount out of range", e.span);
          return a * pow2(static_cast<int>(op == BinaryOp::Shl ? k : -k));
        }
        case BinaryOp::Lt: return Rational(a < b ? 1 : 0);
        case BinaryOp::Le: return Rational(a <= b ? 1 : 0);
        case BinaryOp::Gt: return Rational(a > b ? 1 : 0);
        case BinaryOp::Ge: return Rational(a >= b ? 1 : 0);
        case BinaryOp::Eq: return Rational(a == b ? 1 : 0);
        case BinaryOp::Ne: return Rational(a != b ? 1 : 0);
        case BinaryOp::BitAnd:
        case BinaryOp::BitOr:
        case BinaryOp::BitXor:
          return bitwise(op, a, b, e.span);
        case BinaryOp::LogAnd:
        case BinaryOp::LogOr:
          return Rational(b != 0 ? 1 : 0);
      }
      break;
    }
  }
  throw EvalError("unsupported classical expression", e.span);
}

std::int64_t eval_int(const Expr& expr, const ClassicalEnv& env, const std::string& what) {
  return to_index(eval_classical(expr, env), expr.span, what);
}

bool is_classical(const Expr& e, const ClassicalEnv& env) {
  switch (e.kind) {
    case ExprKind::Number:
      return true;
    case ExprKind::PathRef: {
      const Path& p = e.path;
      bool attr = !p.elems.empty() && p.elems.back().kind == PathElem::Kind::Field &&
                  (p.elems.back().field == "size" || p.elems.back().field == "len");
      if (env.is_quantum(p.root) && !attr) return false;
      for (const auto& el : p.elems)
        if (el.index && !is_classical(*el.index, env)) return false;
      return true;
    }
    default:
      for (const auto& o : e.operands)
        if (!is_classical(*o, env)) return false;
      return true;
  }
}

}  // namespace qmod::frontend
