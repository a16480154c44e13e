#include "qmod/types/interval.hpp"

#include <algorithm>
#include <sstream>

namespace qmod::types {

using frontend::BinaryOp;
using frontend::UnaryOp;

NumExprPtr NumExpr::constant(Rational v, SourceSpan span) {
  auto e = std::make_shared<NumExpr>();
  e->kind = Kind::Const;
  e->value = std::move(v);
  e->span = span;
  return e;
}

NumExprPtr NumExpr::quantum(std::string name, int ref, SourceSpan span) {
  auto e = std::make_shared<NumExpr>();
  e->kind = Kind::QuantumVar;
  e->name = std::move(name);
  e->ref = ref;
  e->span = span;
  return e;
}

NumExprPtr NumExpr::classical(std::string name, SourceSpan span) {
  auto e = std::make_shared<NumExpr>();
  e->kind = Kind::ClassicalVar;
  e->name = std::move(name);
  e->span = span;
  return e;
}

NumExprPtr NumExpr::unary(UnaryOp op, NumExprPtr a, SourceSpan span) {
  auto e = std::make_shared<NumExpr>();
  e->kind = Kind::Unary;
  e->unary_op = op;
  e->operands.push_back(std::move(a));
  e->span = span;
  return e;
}

NumExprPtr NumExpr::binary(BinaryOp op, NumExprPtr a, NumExprPtr b, SourceSpan span) {
  auto e = std::make_shared<NumExpr>();
  e->kind = Kind::Binary;
  e->binary_op = op;
  e->operands.push_back(std::move(a));
  e->operands.push_back(std::move(b));
  e->span = span;
  return e;
}

bool NumExpr::has_quantum() const {
  if (kind == Kind::QuantumVar) return true;
  for (const auto& o : operands)
    if (o->has_quantum()) return true;
  return false;
}

std::string to_string(const NumExpr& e) {
  switch (e.kind) {
    case NumExpr::Kind::Const:
      return qmod::to_string(e.value);
    case NumExpr::Kind::ClassicalVar:
    case NumExpr::Kind::QuantumVar:
      return e.name;
    case NumExpr::Kind::Unary:
      return std::string(frontend::to_string(e.unary_op)) + "(" + to_string(*e.operands[0]) + ")";
    case NumExpr::Kind::Binary:
      return std::string(frontend::to_string(e.binary_op)) + "(" + to_string(*e.operands[0]) + ", " +
             to_string(*e.operands[1]) + ")";
  }
  return {};
}

std::string NumInterval::to_string() const {
  return "[" + qmod::to_string(lo) + ", " + qmod::to_string(hi) + "]/2^-" + std::to_string(frac);
}

NumInterval interval_of(const FixedPointFormat& fmt) {
  return {fmt.min_value(), fmt.max_value(), fmt.fraction_digits};
}

FixedPointFormat infer_format(const NumInterval& iv, std::optional<int> machine_precision) {
  int f = iv.frac;
  if (machine_precision) f = std::min(f, *machine_precision);
  f = std::max(f, 0);
  Rational lo = floor_to(iv.lo, f);
  Rational hi = floor_to(iv.hi, f);
  BigInt L = floor_int(lo * pow2(f));
  BigInt H = floor_int(hi * pow2(f));
  if (L >= 0) {
    int bits = 0;
    while (pow2_int(static_cast<unsigned>(bits)) - 1 < H) ++bits;
    return {std::max({bits, f, 1}), false, f};
  }
  int s = 1;
  while (!(-pow2_int(static_cast<unsigned>(s - 1)) <= L && H <= pow2_int(static_cast<unsigned>(s - 1)) - 1)) ++s;
  return {std::max(s, f + 1), true, f};
}

std::vector<std::optional<int>> AlignmentPlan::routing() const {
  std::vector<std::optional<int>> out(static_cast<std::size_t>(target.size));
  for (int j = 0; j < target.size; ++j) {
    if (j < pad_low) continue;
    int s = j - pad_low + drop_low;
    if (s < source.size)
      out[static_cast<std::size_t>(j)] = s;
    else if (sign_extend)
      out[static_cast<std::size_t>(j)] = source.size - 1;
  }
  return out;
}

Rational AlignmentPlan::apply(const Rational& value) const { return align_value(value, target); }

AlignmentPlan plan_alignment(const FixedPointFormat& src, const FixedPointFormat& dst) {
  AlignmentPlan p;
  p.source = src;
  p.target = dst;
  if (src.fraction_digits >= dst.fraction_digits)
    p.drop_low = src.fraction_digits - dst.fraction_digits;
  else
    p.pad_low = dst.fraction_digits - src.fraction_digits;
  p.extend_high = std::max(0, (dst.size - p.pad_low) - (src.size - p.drop_low));
  p.sign_extend = src.is_signed;
  return p;
}

Rational align_value(const Rational& value, const FixedPointFormat& fmt) {
  BigInt code = floor_int(value * pow2(fmt.fraction_digits));
  return decode_code(wrap_code(code, fmt.size), fmt);
}

Rational snap_constant(const Rational& c, int precision) {
  auto d = dyadic_digits(c, precision);
  if (d) return c;
  return round_to(c, precision);
}

const char* to_string(PlanOp op) {
  switch (op) {
    case PlanOp::Const: return "const";
    case PlanOp::Var: return "var";
    case PlanOp::Add: return "add";
    case PlanOp::Sub: return "sub";
    case PlanOp::Mul: return "mul";
    case PlanOp::Neg: return "neg";
    case PlanOp::Scale: return "scale";
    case PlanOp::Lt: return "lt";
    case PlanOp::Le: return "le";
    case PlanOp::Gt: return "gt";
    case PlanOp::Ge: return "ge";
    case PlanOp::Eq: return "eq";
    case PlanOp::Ne: return "ne";
    case PlanOp::BitAnd: return "bitand";
    case PlanOp::BitOr: return "bitor";
    case PlanOp::BitXor: return "bitxor";
    case PlanOp::BitNot: return "bitnot";
    case PlanOp::LogAnd: return "and";
    case PlanOp::LogOr: return "or";
    case PlanOp::LogNot: return "not";
  }
  return "?";
}

bool is_arithmetic(PlanOp op) {
  return op == PlanOp::Add || op == PlanOp::Sub || op == PlanOp::Mul || op == PlanOp::Neg || op == PlanOp::Scale;
}

bool is_comparison(PlanOp op) {
  return op == PlanOp::Lt || op == PlanOp::Le || op == PlanOp::Gt || op == PlanOp::Ge || op == PlanOp::Eq ||
         op == PlanOp::Ne;
}

namespace {

Rational fold(const NumExpr& e, const ConstMap& consts) {
  switch (e.kind) {
    case NumExpr::Kind::Const:
      return e.value;
    case NumExpr::Kind::ClassicalVar: {
      auto it = consts.find(e.name);
      if (it == consts.end()) throw UnknownVariable("unknown classical value '" + e.name + "'", e.span);
      return it->second;
    }
    case NumExpr::Kind::QuantumVar:
      throw UnsupportedOperator("quantum value in classical context", e.span);
    case NumExpr::Kind::Unary: {
      Rational a = fold(*e.operands[0], consts);
      switch (e.unary_op) {
        case UnaryOp::Neg: return -a;
        case UnaryOp::LogNot: return a == 0 ? 1 : 0;
        case UnaryOp::BitNot:
          if (!is_integer(a)) throw UnsupportedOperator("'~' needs an integer operand", e.span);
          return Rational(-floor_int(a) - 1);
      }
      break;
    }
    case NumExpr::Kind::Binary: {
      Rational a = fold(*e.operands[0], consts);
      Rational b = fold(*e.operands[1], consts);
      auto need_int = [&](const Rational& v) {
        if (!is_integer(v))
          throw UnsupportedOperator(std::string("'") + frontend::spelling(e.binary_op) + "' needs integer operands",
                                    e.span);
        return floor_int(v);
      };
      switch (e.binary_op) {
        case BinaryOp::Add: return a + b;
        case BinaryOp::Sub: return a - b;
        case BinaryOp::Mul: return a * b;
        case BinaryOp::Div:
          if (b == 0) throw UnsupportedOperator("division by zero", e.span);
          return a / b;
        case BinaryOp::Pow: {
          BigInt n = need_int(b);
          if (n > 4096 || n < -4096) throw UnsupportedOperator("exponent out of range", e.span);
          int k = static_cast<int>(n);
          if (k < 0 && a == 0) throw UnsupportedOperator("division by zero", e.span);
          Rational r = 1;
          for (int i = 0; i < std::abs(k); ++i) r *= a;
          return k < 0 ? Rational(1) / r : r;
        }
        case BinaryOp::Shl:
        case BinaryOp::Shr: {
          BigInt n = need_int(b);
          if (n > 4096 || n < -4096) throw UnsupportedOperator("shift amount out of range", e.span);
          int k = static_cast<int>(n);
          return a * pow2(e.binary_op == BinaryOp::Shl ? k : -k);
        }
        case BinaryOp::Lt: return a < b ? 1 : 0;
        case BinaryOp::Le: return a <= b ? 1 : 0;
        case BinaryOp::Gt: return a > b ? 1 : 0;
        case BinaryOp::Ge: return a >= b ? 1 : 0;
        case BinaryOp::Eq: return a == b ? 1 : 0;
        case BinaryOp::Ne: return a != b ? 1 : 0;
        case BinaryOp::BitAnd: return Rational(need_int(a) & need_int(b));
        case BinaryOp::BitOr: return Rational(need_int(a) | need_int(b));
        case BinaryOp::BitXor: return Rational(need_int(a) ^ need_int(b));
        case BinaryOp::LogAnd: return (a != 0 && b != 0) ? 1 : 0;
        case BinaryOp::LogOr: return (a != 0 || b != 0) ? 1 : 0;
      }
      break;
    }
  }
  return 0;
}

bool same_var(const PlanNode& a, const PlanNode& b) {
  return a.is_var() && b.is_var() && a.var == b.var && a.ref == b.ref;
}

class Planner {
 public:
  Planner(const FormatMap& vars, const ConstMap& consts, const PlanOptions& opt)
      : vars_(vars), consts_(consts), opt_(opt) {}

  ExprPlan run(const NumExpr& e) {
    ExprPlan out;
    out.root = plan(e, true);
    out.warnings = std::move(warnings_);
    return out;
  }

 private:
  const FormatMap& vars_;
  const ConstMap& consts_;
  const PlanOptions& opt_;
  std::vector<Diagnostic> warnings_;

  PlanNode make_const(Rational c, SourceSpan span) {
    if (opt_.machine_precision) {
      Rational s = snap_constant(c, *opt_.machine_precision);
      if (s != c) {
        Diagnostic d;
        d.severity = Severity::Warning;
        d.message = "constant " + qmod::to_string(c) + " is not representable with " +
                    std::to_string(*opt_.machine_precision) + " fraction digits; using " + qmod::to_string(s);
        d.span = span;
        warnings_.push_back(std::move(d));
      }
      c = s;
    } else if (!dyadic_digits(c)) {
      throw NotRepresentable("constant " + qmod::to_string(c) + " has no exact fixed-point representation");
    }
    PlanNode n;
    n.op = PlanOp::Const;
    n.constant = c;
    n.span = span;
    int f = *dyadic_digits(c);
    n.exact = n.value = {c, c, f};
    n.exact_format = n.format = infer_format(n.exact);
    return n;
  }

  PlanNode make_var(const NumExpr& e) {
    auto it = vars_.find(e.name);
    if (it == vars_.end()) throw UnknownVariable("unknown quantum variable '" + e.name + "'", e.span);
    PlanNode n;
    n.op = PlanOp::Var;
    n.var = e.name;
    n.ref = e.ref;
    n.span = e.span;
    n.exact = n.value = interval_of(it->second);
    n.exact_format = n.format = it->second;
    return n;
  }

  PlanNode node(PlanOp op, SourceSpan span, std::vector<PlanNode> children) {
    PlanNode n;
    n.op = op;
    n.span = span;
    n.children = std::move(children);
    return n;
  }

  // Applies the precision bound to an arithmetic node whose exact interval is set.
  void finish_arith(PlanNode& n, bool root) {
    n.exact_format = infer_format(n.exact);
    std::optional<int> cap = opt_.machine_precision;
    if (cap && root && opt_.needed_fraction_digits) cap = std::min(*cap, *opt_.needed_fraction_digits);
    if (cap && n.exact.frac > std::max(*cap, 0)) {
      int t = std::max(*cap, 0);
      n.value = {floor_to(n.exact.lo, t), floor_to(n.exact.hi, t), t};
      n.truncated = true;
      n.format = infer_format(n.value);
    } else {
      n.value = n.exact;
      n.format = n.exact_format;
    }
  }

  void finish_bool(PlanNode& n) {
    n.exact = n.value = {0, 1, 0};
    n.exact_format = n.format = FixedPointFormat(1, false, 0);
  }

  PlanNode plan(const NumExpr& e, bool root) {
    if (!e.has_quantum()) return make_const(fold(e, consts_), e.span);
    if (e.kind == NumExpr::Kind::QuantumVar) return make_var(e);
    if (e.kind == NumExpr::Kind::Unary) return plan_unary(e, root);
    return plan_binary(e, root);
  }

  PlanNode plan_unary(const NumExpr& e, bool root) {
    PlanNode a = plan(*e.operands[0], false);
    switch (e.unary_op) {
      case UnaryOp::Neg: {
        PlanNode n = node(PlanOp::Neg, e.span, {});
        n.exact = {-a.value.hi, -a.value.lo, a.value.frac};
        n.children.push_back(std::move(a));
        finish_arith(n, root);
        return n;
      }
      case UnaryOp::BitNot: {
        PlanNode n = node(PlanOp::BitNot, e.span, {});
        n.exact_format = n.format = a.format;
        n.exact = n.value = interval_of(a.format);
        n.children.push_back(std::move(a));
        return n;
      }
      case UnaryOp::LogNot: {
        require_bool(a, e);
        PlanNode n = node(PlanOp::LogNot, e.span, {});
        n.children.push_back(std::move(a));
        finish_bool(n);
        return n;
      }
    }
    throw UnsupportedOperator("unsupported unary operator", e.span);
  }

  void require_bool(const PlanNode& a, const NumExpr& e) {
    if (a.value.lo < 0 || a.value.hi > 1 || a.value.frac != 0)
      throw UnsupportedOperator(
          std::string("logical operator '") +
              (e.kind == NumExpr::Kind::Unary ? frontend::spelling(e.unary_op) : frontend::spelling(e.binary_op)) +
              "' needs boolean operands",
          e.span, "compare the operand explicitly, e.g. 'x != 0'");
  }

  Rational const_operand(const NumExpr& e) { return fold(e, consts_); }

  PlanNode plan_mul_const(PlanNode a, Rational c, SourceSpan span, bool root) {
    PlanNode k = make_const(std::move(c), span);
    return plan_mul(std::move(a), std::move(k), span, root);
  }

  PlanNode plan_mul(PlanNode a, PlanNode b, SourceSpan span, bool root) {
    PlanNode n = node(PlanOp::Mul, span, {});
    const auto& x = a.value;
    const auto& y = b.value;
    Rational p[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
    Rational lo = *std::min_element(p, p + 4);
    Rational hi = *std::max_element(p, p + 4);
    if (same_var(a, b) && lo < 0) lo = 0;
    n.exact = {lo, hi, x.frac + y.frac};
    n.children.push_back(std::move(a));
    n.children.push_back(std::move(b));
    finish_arith(n, root);
    return n;
  }

  PlanNode plan_scale(PlanNode a, int k, SourceSpan span, bool root) {
    PlanNode n = node(PlanOp::Scale, span, {});
    n.scale = k;
    n.exact = {a.value.lo * pow2(k), a.value.hi * pow2(k), std::max(0, a.value.frac - k)};
    n.children.push_back(std::move(a));
    finish_arith(n, root);
    return n;
  }

  int small_int(const Rational& v, const NumExpr& e, const char* what) {
    if (!is_integer(v)) throw UnsupportedOperator(std::string(what) + " must be an integer", e.span);
    BigInt n = floor_int(v);
    if (n > 4096 || n < -4096) throw UnsupportedOperator(std::string(what) + " out of range", e.span);
    return static_cast<int>(n);
  }

  PlanNode plan_binary(const NumExpr& e, bool root) {
    const NumExpr& l = *e.operands[0];
    const NumExpr& r = *e.operands[1];
    switch (e.binary_op) {
      case BinaryOp::Div: {
        if (r.has_quantum())
          throw UnsupportedOperator("division by a quantum value is not supported", e.span,
                                    "only classical divisors are allowed");
        Rational d = const_operand(r);
        if (d == 0) throw UnsupportedOperator("division by zero", e.span);
        return plan_mul_const(plan(l, false), Rational(1) / d, r.span, root);
      }
      case BinaryOp::Pow: {
        if (r.has_quantum()) throw UnsupportedOperator("quantum exponents are not supported", e.span);
        int k = small_int(const_operand(r), e, "exponent");
        if (k < 0) throw UnsupportedOperator("negative exponent of a quantum value", e.span);
        if (k == 0) return make_const(1, e.span);
        PlanNode acc = plan(l, k == 1 && root);
        for (int i = 1; i < k; ++i) acc = plan_mul(std::move(acc), plan(l, false), e.span, root && i == k - 1);
        return acc;
      }
      case BinaryOp::Shl:
      case BinaryOp::Shr: {
        if (r.has_quantum()) throw UnsupportedOperator("shift amounts must be classical", e.span);
        int k = small_int(const_operand(r), e, "shift amount");
        return plan_scale(plan(l, false), e.binary_op == BinaryOp::Shl ? k : -k, e.span, root);
      }
      default:
        break;
    }

    PlanNode a = plan(l, false);
    PlanNode b = plan(r, false);
    switch (e.binary_op) {
      case BinaryOp::Add:
      case BinaryOp::Sub: {
        bool add = e.binary_op == BinaryOp::Add;
        PlanNode n = node(add ? PlanOp::Add : PlanOp::Sub, e.span, {});
        int f = std::max(a.value.frac, b.value.frac);
        if (add)
          n.exact = {a.value.lo + b.value.lo, a.value.hi + b.value.hi, f};
        else
          n.exact = {a.value.lo - b.value.hi, a.value.hi - b.value.lo, f};
        n.children.push_back(std::move(a));
        n.children.push_back(std::move(b));
        finish_arith(n, root);
        return n;
      }
      case BinaryOp::Mul:
        return plan_mul(std::move(a), std::move(b), e.span, root);
      case BinaryOp::Lt:
      case BinaryOp::Le:
      case BinaryOp::Gt:
      case BinaryOp::Ge:
      case BinaryOp::Eq:
      case BinaryOp::Ne: {
        static const std::map<BinaryOp, PlanOp> ops = {{BinaryOp::Lt, PlanOp::Lt}, {BinaryOp::Le, PlanOp::Le},
                                                       {BinaryOp::Gt, PlanOp::Gt}, {BinaryOp::Ge, PlanOp::Ge},
                                                       {BinaryOp::Eq, PlanOp::Eq}, {BinaryOp::Ne, PlanOp::Ne}};
        PlanNode n = node(ops.at(e.binary_op), e.span, {});
        n.children.push_back(std::move(a));
        n.children.push_back(std::move(b));
        finish_bool(n);
        return n;
      }
      case BinaryOp::BitAnd:
      case BinaryOp::BitOr:
      case BinaryOp::BitXor: {
        PlanOp op = e.binary_op == BinaryOp::BitAnd ? PlanOp::BitAnd
                    : e.binary_op == BinaryOp::BitOr ? PlanOp::BitOr
                                                     : PlanOp::BitXor;
        FixedPointFormat fmt;
        if (a.is_const() || b.is_const()) {
          PlanNode& c = a.is_const() ? a : b;
          PlanNode& q = a.is_const() ? b : a;
          fmt = q.format;
          if (!fmt.contains(c.constant))
            throw UnsupportedOperator("constant " + qmod::to_string(c.constant) +
                                          " is not representable in the bitwise operand format " + fmt.to_string(),
                                      e.span);
          c.format = fmt;
        } else {
          if (!(a.format == b.format))
            throw UnsupportedOperator("bitwise operands must share a format (" + a.format.to_string() + " vs " +
                                          b.format.to_string() + ")",
                                      e.span, "assign one operand to a variable of the other's type first");
          fmt = a.format;
        }
        PlanNode n = node(op, e.span, {});
        n.exact_format = n.format = fmt;
        n.exact = n.value = interval_of(fmt);
        n.children.push_back(std::move(a));
        n.children.push_back(std::move(b));
        return n;
      }
      case BinaryOp::LogAnd:
      case BinaryOp::LogOr: {
        require_bool(a, e);
        require_bool(b, e);
        PlanNode n = node(e.binary_op == BinaryOp::LogAnd ? PlanOp::LogAnd : PlanOp::LogOr, e.span, {});
        n.children.push_back(std::move(a));
        n.children.push_back(std::move(b));
        finish_bool(n);
        return n;
      }
      default:
        break;
    }
    throw UnsupportedOperator("unsupported operator", e.span);
  }
};

}  // namespace

ExprPlan plan_expression(const NumExpr& expr, const FormatMap& vars, const ConstMap& consts,
                         const PlanOptions& options) {
  return Planner(vars, consts, options).run(expr);
}

NumInterval infer_interval(const NumExpr& expr, const FormatMap& vars, const ConstMap& consts) {
  return plan_expression(expr, vars, consts, {}).root.value;
}

std::string to_string(const PlanNode& n) {
  std::ostringstream os;
  switch (n.op) {
    case PlanOp::Const:
      os << qmod::to_string(n.constant);
      return os.str();
    case PlanOp::Var:
      os << n.var;
      return os.str();
    default:
      break;
  }
  os << to_string(n.op);
  if (n.op == PlanOp::Scale) os << "<" << n.scale << ">";
  if (n.truncated) os << "~";
  os << "(";
  for (std::size_t i = 0; i < n.children.size(); ++i) os << (i ? ", " : "") << to_string(n.children[i]);
  os << ")";
  return os.str();
}

}  // namespace qmod::types
