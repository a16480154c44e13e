#include "qmod/synth/synth.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qmod/ir/pool.hpp"
#include "qmod/ir/transform.hpp"

namespace qmod::synth {

using ir::Event;
using ir::Gate;
using ir::GateKind;
using ir::QubitId;
using sema::TRef;
using sema::TStmt;
using sema::VarId;
using types::FixedPointFormat;
using types::PlanNode;
using types::PlanOp;

namespace {

/// Qubits read as a fixed-point number: value = code * 2^exp.
struct Operand {
  std::vector<QubitId> ids;
  bool is_signed = false;
  int exp = 0;

  /// Qubit carrying the bit of weight 2^weight (sign-extended), if any.
  std::optional<QubitId> bit_at(int weight) const {
    int k = weight - exp;
    if (k < 0 || ids.empty()) return std::nullopt;
    if (k >= static_cast<int>(ids.size())) {
      if (is_signed) return ids.back();
      return std::nullopt;
    }
    return ids[static_cast<std::size_t>(k)];
  }
};

Operand operand_of(std::vector<QubitId> ids, const FixedPointFormat& f) {
  return {std::move(ids), f.is_signed, -f.fraction_digits};
}

bool layout_matches(const Operand& o, const FixedPointFormat& f) {
  return static_cast<int>(o.ids.size()) == f.size && o.is_signed == f.is_signed && o.exp == -f.fraction_digits;
}

/// Two's complement code of floor(v / 2^exp), wrapped to `size` bits.
BigInt code_for(const Rational& v, int exp, int size) {
  BigInt c = floor_int(v * pow2(-exp));
  BigInt m = pow2_int(static_cast<unsigned>(size));
  c %= m;
  if (c < 0) c += m;
  return c;
}

bool code_bit(const BigInt& c, int i) { return boost::multiprecision::bit_test(c, static_cast<unsigned>(i)); }

int signed_width(const BigInt& lo, const BigInt& hi) {
  int w = 1;
  while (!(lo >= -BigInt(pow2_int(static_cast<unsigned>(w - 1))) && hi <= BigInt(pow2_int(static_cast<unsigned>(w - 1))) - 1))
    ++w;
  return w;
}

/// Grid exponent of a dyadic constant.
int const_exp(const Rational& c) { return -dyadic_digits(c).value_or(0); }

struct Value {
  Operand op;
  bool is_const = false;
  Rational constant;
  bool owned = false;
  /// Slice of a wider register; the rest is garbage until uncomputed.
  bool view = false;
  std::size_t begin = 0;
  std::size_t end = 0;
  types::NumInterval range;
};

/// One input bit of a bitwise or logical gate: a qubit or a constant.
struct Bit {
  std::optional<QubitId> q;
  bool one = false;
};

class Synth {
 public:
  Synth(const sema::TypedProgram& p, const SynthOptions& o) : p_(p), opt_(o), pool_(o.recycle) {
    sink_ = &result_.circuit.events;
  }

  SynthResult run() {
    for (const auto& s : p_.body) stmt(s);
    for (VarId o : p_.outputs) {
      const auto& v = p_.var(o);
      auto it = regs_.find(o);
      if (it == regs_.end() || !v.type)
        throw SynthError("UseBeforeInit", "output '" + v.name + "' is not initialized", v.span);
      result_.circuit.outputs.push_back({v.name, it->second, *v.type});
    }
    result_.registers = regs_;
    return std::move(result_);
  }

 private:
  const sema::TypedProgram& p_;
  SynthOptions opt_;
  ir::QubitPool pool_;
  SynthResult result_;
  std::vector<Event>* sink_;
  std::vector<QubitId> controls_;
  std::map<VarId, std::vector<QubitId>> regs_;
  SourceSpan span_;

  struct Uncontrolled {
    Synth& s;
    std::vector<QubitId> saved;
    explicit Uncontrolled(Synth& s) : s(s), saved(std::move(s.controls_)) { s.controls_.clear(); }
    ~Uncontrolled() { s.controls_ = std::move(saved); }
  };

  // ---- emission ----------------------------------------------------------

  void raw(Gate g) { sink_->push_back(Event::make_gate(std::move(g), span_)); }

  void emit(const Gate& g) {
    if (controls_.empty()) {
      raw(g);
      return;
    }
    for (auto& h : ir::add_controls(g, controls_)) raw(std::move(h));
  }

  void put(const Gate& g, bool stack) { stack ? emit(g) : raw(g); }

  std::vector<QubitId> alloc(int n) {
    auto ids = pool_.alloc(n);
    sink_->push_back(Event::alloc(ids, span_));
    return ids;
  }

  void release(const std::vector<QubitId>& ids) {
    pool_.release(ids);
    sink_->push_back(Event::release(ids, span_));
  }

  /// Appends events, drawing a fresh qubit for every id they allocate.
  void replay(const std::vector<Event>& evs) {
    std::map<QubitId, QubitId> m;
    auto map = [&](QubitId q) {
      auto it = m.find(q);
      return it == m.end() ? q : it->second;
    };
    for (const auto& e : evs) {
      switch (e.kind) {
        case Event::Kind::Gate: {
          Gate g = e.gate;
          for (auto& q : g.qubits) q = map(q);
          sink_->push_back(Event::make_gate(std::move(g), e.span));
          break;
        }
        case Event::Kind::Alloc: {
          auto ids = pool_.alloc(static_cast<int>(e.ids.size()));
          for (std::size_t i = 0; i < ids.size(); ++i) m[e.ids[i]] = ids[i];
          sink_->push_back(Event::alloc(ids, e.span));
          break;
        }
        case Event::Kind::Release: {
          std::vector<QubitId> ids;
          for (QubitId q : e.ids) ids.push_back(map(q));
          pool_.release(ids);
          sink_->push_back(Event::release(ids, e.span));
          break;
        }
        case Event::Kind::Marker:
          break;
      }
    }
  }

  std::vector<Event> slice(std::size_t b, std::size_t e) const {
    return {sink_->begin() + static_cast<std::ptrdiff_t>(b), sink_->begin() + static_cast<std::ptrdiff_t>(e)};
  }

  void uncompute_range(std::size_t b, std::size_t e) { replay(ir::adjoint(slice(b, e))); }

  void uncompute(const Value& v) {
    if (v.owned) uncompute_range(v.begin, v.end);
  }

  std::vector<QubitId> qubits(const TRef& r) const {
    auto it = regs_.find(r.var);
    if (it == regs_.end()) throw SynthError("UseBeforeInit", "'" + r.text + "' is not initialized", r.span);
    const auto& q = it->second;
    return {q.begin() + r.offset, q.begin() + r.offset + r.size};
  }

  // ---- arithmetic primitives ---------------------------------------------

  /// b += a (or b -= a) modulo 2^n with a ripple-carry adder; a is restored.
  void cuccaro(const std::vector<QubitId>& a, const std::vector<QubitId>& b, bool subtract) {
    std::size_t n = a.size();
    if (n == 1) {
      raw(Gate::cx(a[0], b[0]));
      return;
    }
    QubitId c = alloc(1)[0];
    std::vector<Gate> gs;
    auto maj = [&](QubitId x, QubitId y, QubitId z) {
      gs.push_back(Gate::cx(z, y));
      gs.push_back(Gate::cx(z, x));
      gs.push_back(Gate::ccx(x, y, z));
    };
    auto uma = [&](QubitId x, QubitId y, QubitId z) {
      gs.push_back(Gate::ccx(x, y, z));
      gs.push_back(Gate::cx(z, x));
      gs.push_back(Gate::cx(x, y));
    };
    maj(c, b[0], a[0]);
    for (std::size_t i = 1; i < n; ++i) maj(a[i - 1], b[i], a[i]);
    for (std::size_t i = n - 1; i >= 1; --i) uma(a[i - 1], b[i], a[i]);
    uma(c, b[0], a[0]);
    if (subtract) std::reverse(gs.begin(), gs.end());
    for (auto& g : gs) raw(std::move(g));
    release({c});
  }

  /// acc ^= src aligned to acc's grid (floor below, sign/zero extension above).
  void xor_operand(const std::vector<QubitId>& acc, int acc_exp, const Operand& src, bool stack) {
    for (std::size_t i = 0; i < acc.size(); ++i)
      if (auto q = src.bit_at(acc_exp + static_cast<int>(i))) put(Gate::cx(*q, acc[i]), stack);
  }

  void xor_const(const std::vector<QubitId>& acc, int acc_exp, const Rational& c, bool stack) {
    BigInt code = code_for(c, acc_exp, static_cast<int>(acc.size()));
    for (std::size_t i = 0; i < acc.size(); ++i)
      if (code_bit(code, static_cast<int>(i))) put(Gate::one(GateKind::X, acc[i]), stack);
  }

  /// acc += src (or -=) modulo 2^n. With `extra`, src is only added where
  /// that qubit is 1. With `stack`, the addition is under the control stack.
  void add_operand(const std::vector<QubitId>& acc, int acc_exp, const Operand& src, bool subtract,
                   std::optional<QubitId> extra, bool stack) {
    int n = static_cast<int>(acc.size());
    int i0 = std::max(0, src.exp - acc_exp);
    if (i0 >= n) return;
    int m = n - i0;
    std::vector<QubitId> hi(acc.begin() + i0, acc.end());
    bool controlled = extra || (stack && !controls_.empty());
    if (!controlled && src.exp == acc_exp + i0 && static_cast<int>(src.ids.size()) >= m) {
      cuccaro(std::vector<QubitId>(src.ids.begin(), src.ids.begin() + m), hi, subtract);
      return;
    }
    auto t = alloc(m);
    auto copy = [&] {
      for (int i = 0; i < m; ++i) {
        auto q = src.bit_at(acc_exp + i0 + i);
        if (!q) continue;
        Gate g = extra && *extra != *q ? Gate::ccx(*extra, *q, t[static_cast<std::size_t>(i)])
                                       : Gate::cx(*q, t[static_cast<std::size_t>(i)]);
        put(g, stack);
      }
    };
    copy();
    cuccaro(t, hi, subtract);
    copy();
    release(t);
  }

  void add_const(const std::vector<QubitId>& acc, int acc_exp, const Rational& c, bool subtract, bool stack) {
    int n = static_cast<int>(acc.size());
    BigInt code = code_for(c, acc_exp, n);
    if (code == 0) return;
    int i0 = static_cast<int>(boost::multiprecision::lsb(code));
    int m = n - i0;
    std::vector<QubitId> hi(acc.begin() + i0, acc.end());
    auto t = alloc(m);
    auto prep = [&] {
      for (int i = 0; i < m; ++i)
        if (code_bit(code, i0 + i)) put(Gate::one(GateKind::X, t[static_cast<std::size_t>(i)]), stack);
    };
    prep();
    cuccaro(t, hi, subtract);
    prep();
    release(t);
  }

  // ---- expression compute ----------------------------------------------------

  using RefQubits = std::vector<std::vector<QubitId>>;

  Value compute(const PlanNode& n, const RefQubits& refq) {
    std::size_t start = sink_->size();
    Value v = natural(n, refq);
    v.range = n.value;
    if (v.is_const) return v;
    v.begin = start;
    v.end = sink_->size();
    if (!layout_matches(v.op, n.format)) {
      // Floor truncation drops low bits; the dropped bits stay as garbage
      // until the whole range is uncomputed.
      int d = -n.format.fraction_digits - v.op.exp;
      if (d >= 0 && d + n.format.size <= static_cast<int>(v.op.ids.size())) {
        v.op = Operand{{v.op.ids.begin() + d, v.op.ids.begin() + d + n.format.size},
                       n.format.is_signed,
                       -n.format.fraction_digits};
        v.view = true;
        return v;
      }
      Value w;
      w.op = operand_of(alloc(n.format.size), n.format);
      xor_operand(w.op.ids, w.op.exp, v.op, false);
      uncompute(v);
      w.owned = true;
      w.begin = start;
      w.end = sink_->size();
      w.range = n.value;
      return w;
    }
    return v;
  }

  Value fresh(const FixedPointFormat& f) {
    Value v;
    v.op = operand_of(alloc(f.size), f);
    v.owned = true;
    return v;
  }

  void place(const Value& r, const Value& a) {
    if (a.is_const)
      xor_const(r.op.ids, r.op.exp, a.constant, false);
    else
      xor_operand(r.op.ids, r.op.exp, a.op, false);
  }

  void accumulate(const Value& r, const Value& a, bool subtract) {
    if (a.is_const)
      add_const(r.op.ids, r.op.exp, a.constant, subtract, false);
    else
      add_operand(r.op.ids, r.op.exp, a.op, subtract, std::nullopt, false);
  }

  Value natural(const PlanNode& n, const RefQubits& refq) {
    switch (n.op) {
      case PlanOp::Const: {
        Value v;
        v.is_const = true;
        v.constant = n.constant;
        return v;
      }
      case PlanOp::Var: {
        Value v;
        v.op = operand_of(refq.at(static_cast<std::size_t>(n.ref)), n.format);
        return v;
      }
      case PlanOp::Scale: {
        Value v = compute(n.children[0], refq);
        if (v.is_const)
          v.constant *= pow2(n.scale);
        else
          v.op.exp += n.scale;
        return v;
      }
      case PlanOp::Neg: {
        Value a = compute(n.children[0], refq);
        Value r = fresh(n.exact_format);
        accumulate(r, a, true);
        uncompute(a);
        return r;
      }
      case PlanOp::Add:
      case PlanOp::Sub: {
        Value a = compute(n.children[0], refq);
        Value b = compute(n.children[1], refq);
        Value r = fresh(n.exact_format);
        place(r, a);
        accumulate(r, b, n.op == PlanOp::Sub);
        uncompute(b);
        uncompute(a);
        return r;
      }
      case PlanOp::Mul:
        return multiply(n, refq);
      case PlanOp::Lt:
      case PlanOp::Le:
      case PlanOp::Gt:
      case PlanOp::Ge:
      case PlanOp::Eq:
      case PlanOp::Ne:
        return compare(n, refq);
      case PlanOp::BitAnd:
      case PlanOp::BitOr:
      case PlanOp::BitXor:
      case PlanOp::LogAnd:
      case PlanOp::LogOr:
        return bitwise(n, refq);
      case PlanOp::BitNot:
      case PlanOp::LogNot: {
        Value a = compute(n.children[0], refq);
        Value r = fresh(n.format);
        place(r, a);
        for (QubitId q : r.op.ids) raw(Gate::one(GateKind::X, q));
        uncompute(a);
        return r;
      }
    }
    throw SynthError("UnsupportedOperator", std::string("cannot synthesize '") + types::to_string(n.op) + "'", n.span);
  }

  Value multiply(const PlanNode& n, const RefQubits& refq) {
    Value a = compute(n.children[0], refq);
    Value b = compute(n.children[1], refq);
    Value r = fresh(n.exact_format);
    if (a.is_const || b.is_const) {
      const Value& c = a.is_const ? a : b;
      const Value& x = a.is_const ? b : a;
      if (x.is_const) {
        Value k;
        k.is_const = true;
        k.constant = a.constant * b.constant;
        place(r, k);
      } else {
        int e = const_exp(c.constant);
        BigInt m = floor_int(c.constant * pow2(-e));
        bool neg = m < 0;
        if (neg) m = -m;
        for (unsigned j = 0; m != 0 && j <= boost::multiprecision::msb(m); ++j)
          if (boost::multiprecision::bit_test(m, j))
            add_operand(r.op.ids, r.op.exp, Operand{x.op.ids, x.op.is_signed, x.op.exp + e + static_cast<int>(j)}, neg,
                        std::nullopt, false);
      }
    } else {
      int nb = static_cast<int>(b.op.ids.size());
      for (int j = 0; j < nb; ++j) {
        bool sign = b.op.is_signed && j == nb - 1;
        add_operand(r.op.ids, r.op.exp, Operand{a.op.ids, a.op.is_signed, a.op.exp + b.op.exp + j}, sign,
                    b.op.ids[static_cast<std::size_t>(j)], false);
      }
    }
    uncompute(b);
    uncompute(a);
    return r;
  }

  /// x == c for a register and a constant: X-conjugated multi-controlled X.
  void equals_const(const Operand& x, const Rational& c, QubitId r) {
    Rational scaled = c * pow2(-x.exp);
    if (!is_integer(scaled)) return;
    BigInt code = floor_int(scaled);
    int n = static_cast<int>(x.ids.size());
    BigInt lo = x.is_signed ? -BigInt(pow2_int(static_cast<unsigned>(n - 1))) : BigInt(0);
    BigInt hi = (x.is_signed ? BigInt(pow2_int(static_cast<unsigned>(n - 1))) : BigInt(pow2_int(static_cast<unsigned>(n)))) - 1;
    if (code < lo || code > hi) return;
    BigInt bits = code_for(c, x.exp, n);
    auto conj = [&] {
      for (int i = 0; i < n; ++i)
        if (!code_bit(bits, i)) raw(Gate::one(GateKind::X, x.ids[static_cast<std::size_t>(i)]));
    };
    conj();
    raw(Gate::mcx(x.ids, r));
    conj();
  }

  Value compare(const PlanNode& n, const RefQubits& refq) {
    Value a = compute(n.children[0], refq);
    Value b = compute(n.children[1], refq);
    Value r = fresh(n.format);
    QubitId out = r.op.ids[0];
    bool eq = n.op == PlanOp::Eq || n.op == PlanOp::Ne;
    bool negate = n.op == PlanOp::Le || n.op == PlanOp::Ge || n.op == PlanOp::Ne;
    if (eq && (a.is_const != b.is_const)) {
      const Value& c = a.is_const ? a : b;
      const Value& x = a.is_const ? b : a;
      equals_const(x.op, c.constant, out);
    } else {
      // x - y, then read the sign bit (ordering) or test for zero (equality).
      bool swap = n.op == PlanOp::Le || n.op == PlanOp::Gt;
      const Value& x = swap ? b : a;
      const Value& y = swap ? a : b;
      auto grid = [](const Value& v) { return v.is_const ? const_exp(v.constant) : v.op.exp; };
      int e = std::min(grid(x), grid(y));
      Rational lo = (x.is_const ? x.constant : x.range.lo) - (y.is_const ? y.constant : y.range.hi);
      Rational hi = (x.is_const ? x.constant : x.range.hi) - (y.is_const ? y.constant : y.range.lo);
      int w = signed_width(floor_int(lo * pow2(-e)), floor_int(hi * pow2(-e)));
      std::size_t ds = sink_->size();
      Value d;
      d.op = Operand{alloc(w), true, e};
      place(d, x);
      accumulate(d, y, true);
      std::size_t de = sink_->size();
      if (eq) {
        for (QubitId q : d.op.ids) raw(Gate::one(GateKind::X, q));
        raw(Gate::mcx(d.op.ids, out));
        for (QubitId q : d.op.ids) raw(Gate::one(GateKind::X, q));
      } else {
        raw(Gate::cx(d.op.ids.back(), out));
      }
      uncompute_range(ds, de);
    }
    if (negate) raw(Gate::one(GateKind::X, out));
    uncompute(b);
    uncompute(a);
    return r;
  }

  /// Bit i of a value laid out on the grid 2^exp with `size` bits.
  static Bit bit_of(const Value& v, int exp, int size, int i) {
    Bit b;
    if (v.is_const)
      b.one = code_bit(code_for(v.constant, exp, size), i);
    else
      b.q = v.op.bit_at(exp + i);
    return b;
  }

  void copy_bit(const Bit& x, QubitId t) {
    if (x.q)
      raw(Gate::cx(*x.q, t));
    else if (x.one)
      raw(Gate::one(GateKind::X, t));
  }

  Value bitwise(const PlanNode& n, const RefQubits& refq) {
    Value a = compute(n.children[0], refq);
    Value b = compute(n.children[1], refq);
    Value r = fresh(n.format);
    bool is_and = n.op == PlanOp::BitAnd || n.op == PlanOp::LogAnd;
    bool is_or = n.op == PlanOp::BitOr || n.op == PlanOp::LogOr;
    int size = static_cast<int>(r.op.ids.size());
    for (int i = 0; i < size; ++i) {
      Bit x = bit_of(a, r.op.exp, size, i);
      Bit y = bit_of(b, r.op.exp, size, i);
      QubitId t = r.op.ids[static_cast<std::size_t>(i)];
      if (is_and) {
        if (!x.q) {
          if (x.one) copy_bit(y, t);
        } else if (!y.q) {
          if (y.one) copy_bit(x, t);
        } else if (*x.q == *y.q) {
          raw(Gate::cx(*x.q, t));
        } else {
          raw(Gate::ccx(*x.q, *y.q, t));
        }
      } else if (is_or) {
        if (!x.q) {
          x.one ? raw(Gate::one(GateKind::X, t)) : copy_bit(y, t);
        } else if (!y.q) {
          y.one ? raw(Gate::one(GateKind::X, t)) : copy_bit(x, t);
        } else if (*x.q == *y.q) {
          raw(Gate::cx(*x.q, t));
        } else {
          raw(Gate::cx(*x.q, t));
          raw(Gate::cx(*y.q, t));
          raw(Gate::ccx(*x.q, *y.q, t));
        }
      } else if (!(x.q && y.q && *x.q == *y.q)) {
        copy_bit(x, t);
        copy_bit(y, t);
      }
    }
    uncompute(b);
    uncompute(a);
    return r;
  }

  // ---- statements ------------------------------------------------------------

  RefQubits ref_qubits(const TStmt& s) const {
    RefQubits q;
    for (const auto& r : s.refs) q.push_back(qubits(r));
    return q;
  }

  types::PlanNode plan(const TStmt& s, std::optional<int> needed) const {
    return sema::plan_statement_expr(s, p_.machine_precision, needed).root;
  }

  void block(const std::vector<TStmt>& body) {
    for (const auto& s : body) stmt(s);
  }

  std::vector<QubitId> bound_qubits() const {
    std::vector<QubitId> ids;
    for (const auto& [v, q] : regs_) ids.insert(ids.end(), q.begin(), q.end());
    return ids;
  }

  void stmt(const TStmt& s) {
    SourceSpan saved = span_;
    span_ = s.span;
    switch (s.kind) {
      case TStmt::Kind::Allocate:
        regs_[s.target] = alloc(s.type.size());
        break;
      case TStmt::Kind::Assign:
        assign(s);
        break;
      case TStmt::Kind::InplaceXor:
      case TStmt::Kind::InplaceAdd:
        inplace(s);
        break;
      case TStmt::Kind::Gate: {
        Gate g;
        g.kind = s.gate;
        g.theta = s.theta;
        for (const auto& r : s.qubits) g.qubits.push_back(qubits(r).at(0));
        emit(g);
        break;
      }
      case TStmt::Kind::Phase:
        phase(s);
        break;
      case TStmt::Kind::Amplitude:
        amplitude(s);
        break;
      case TStmt::Kind::Control:
        control(s);
        break;
      case TStmt::Kind::WithinApply:
        within_apply(s);
        break;
      case TStmt::Kind::Invert:
      case TStmt::Kind::Power:
        functor(s);
        break;
      case TStmt::Kind::Scope:
        if (s.is_main) {
          for (const auto& c : s.body) {
            stmt(c);
            if (opt_.markers)
              sink_->push_back(Event::marker("line " + std::to_string(c.span.line), bound_qubits(), c.span));
          }
        } else {
          block(s.body);
        }
        break;
    }
    span_ = saved;
  }

  void assign(const TStmt& s) {
    PlanNode root = plan(s, s.format.fraction_digits);
    RefQubits refq = ref_qubits(s);
    Uncontrolled u(*this);
    Value v = compute(root, refq);
    std::vector<QubitId> ids;
    if (v.is_const) {
      ids = alloc(s.format.size);
      xor_const(ids, -s.format.fraction_digits, v.constant, false);
    } else if (v.owned && !v.view && layout_matches(v.op, s.format)) {
      ids = v.op.ids;
    } else {
      ids = alloc(s.format.size);
      xor_operand(ids, -s.format.fraction_digits, v.op, false);
      uncompute(v);
    }
    regs_[s.target] = ids;
  }

  void inplace(const TStmt& s) {
    FixedPointFormat tf = s.lhs->view.numeric_view();
    PlanNode root = plan(s, tf.fraction_digits);
    RefQubits refq = ref_qubits(s);
    auto target = qubits(*s.lhs);
    int texp = -tf.fraction_digits;
    Value v;
    {
      Uncontrolled u(*this);
      v = compute(root, refq);
    }
    bool add = s.kind == TStmt::Kind::InplaceAdd;
    if (v.is_const) {
      add ? add_const(target, texp, v.constant, false, true) : xor_const(target, texp, v.constant, true);
    } else {
      add ? add_operand(target, texp, v.op, false, std::nullopt, true) : xor_operand(target, texp, v.op, true);
    }
    Uncontrolled u(*this);
    uncompute(v);
  }

  void phase(const TStmt& s) {
    std::vector<PolyOperand> ops;
    for (const auto& r : s.refs) ops.push_back({qubits(r), r.view.numeric_view()});
    PhasePolynomial poly = expr_to_phase_polynomial(*s.expr, ops);
    for (const auto& g : phase_gates(poly, s.theta)) emit(g);
    auto it = poly.find({});
    if (it != poly.end() && !controls_.empty()) {
      double a = std::remainder(s.theta * to_double(it->second), 2 * M_PI);
      if (a != 0.0) raw(Gate::mcp(a, controls_));
    }
  }

  void amplitude(const TStmt& s) {
    PlanNode root = plan(s, std::nullopt);
    RefQubits refq = ref_qubits(s);
    QubitId ind = qubits(*s.lhs).at(0);
    auto angle = [](const Rational& v) {
      double g = std::clamp(to_double(v), -1.0, 1.0);
      return 2.0 * std::asin(g);
    };
    Value v;
    {
      Uncontrolled u(*this);
      v = compute(root, refq);
    }
    if (v.is_const) {
      double a = angle(v.constant);
      if (a != 0.0) emit(Gate::one(GateKind::RY, ind, a));
      return;
    }
    // Naive multiplexer: one RY(a/2) X RY(-a/2) X pattern per register value.
    const auto& iv = root.value;
    int size = static_cast<int>(v.op.ids.size());
    BigInt lo = floor_int(iv.lo * pow2(-v.op.exp));
    BigInt hi = floor_int(iv.hi * pow2(-v.op.exp));
    for (BigInt k = lo; k <= hi; ++k) {
      Rational val = Rational(k) * pow2(v.op.exp);
      double a = angle(val);
      if (std::abs(a) < 1e-15) continue;
      BigInt code = code_for(val, v.op.exp, size);
      auto conj = [&] {
        for (int i = 0; i < size; ++i)
          if (!code_bit(code, i)) raw(Gate::one(GateKind::X, v.op.ids[static_cast<std::size_t>(i)]));
      };
      conj();
      raw(Gate::one(GateKind::RY, ind, a / 2));
      emit(Gate::mcx(v.op.ids, ind));
      raw(Gate::one(GateKind::RY, ind, -a / 2));
      emit(Gate::mcx(v.op.ids, ind));
      conj();
    }
    Uncontrolled u(*this);
    uncompute(v);
  }

  void control(const TStmt& s) {
    if (s.lhs) {
      auto ids = qubits(*s.lhs);
      std::size_t n = controls_.size();
      controls_.insert(controls_.end(), ids.begin(), ids.end());
      block(s.body);
      controls_.resize(n);
      return;
    }
    PlanNode root = plan(s, 0);
    RefQubits refq = ref_qubits(s);
    Value v;
    {
      Uncontrolled u(*this);
      v = compute(root, refq);
    }
    if (v.is_const) {
      if (v.constant != 0) block(s.body);
      return;
    }
    controls_.push_back(v.op.ids.at(0));
    block(s.body);
    controls_.pop_back();
    span_ = s.span;
    Uncontrolled u(*this);
    uncompute(v);
  }

  void within_apply(const TStmt& s) {
    std::set<VarId> before;
    for (const auto& [v, q] : regs_) before.insert(v);
    std::size_t ub = sink_->size();
    {
      Uncontrolled u(*this);
      block(s.body);
    }
    std::size_t ue = sink_->size();
    std::vector<VarId> created;
    for (const auto& [v, q] : regs_)
      if (!before.count(v)) created.push_back(v);
    block(s.apply);
    {
      Uncontrolled u(*this);
      uncompute_range(ub, ue);
    }
    for (VarId v : created) regs_.erase(v);
  }

  void functor(const TStmt& s) {
    ir::QubitPool saved_pool = pool_;
    auto saved_regs = regs_;
    std::vector<Event> buf;
    std::vector<Event>* outer = sink_;
    sink_ = &buf;
    block(s.body);
    sink_ = outer;
    pool_ = saved_pool;
    regs_ = saved_regs;
    if (s.kind == TStmt::Kind::Invert) {
      replay(ir::adjoint(buf));
    } else {
      for (int i = 0; i < s.exponent; ++i) replay(buf);
    }
  }
};

// ---- phase polynomials ---------------------------------------------------------

PhasePolynomial poly_add(PhasePolynomial a, const PhasePolynomial& b, const Rational& sign) {
  for (const auto& [m, c] : b) {
    a[m] += sign * c;
    if (a[m] == 0) a.erase(m);
  }
  return a;
}

PhasePolynomial poly_mul(const PhasePolynomial& a, const PhasePolynomial& b) {
  PhasePolynomial r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      std::vector<QubitId> m;
      std::set_union(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
      r[m] += ca * cb;
      if (r[m] == 0) r.erase(m);
    }
  return r;
}

Rational poly_constant(const PhasePolynomial& p, const types::NumExpr& e, const char* what) {
  for (const auto& [m, c] : p)
    if (!m.empty()) throw SynthError("NonPolynomial", std::string(what) + " must be classical", e.span);
  auto it = p.find({});
  return it == p.end() ? Rational(0) : it->second;
}

PhasePolynomial expand(const types::NumExpr& e, const std::vector<PolyOperand>& refs) {
  using K = types::NumExpr::Kind;
  using frontend::BinaryOp;
  switch (e.kind) {
    case K::Const: {
      PhasePolynomial p;
      if (e.value != 0) p[{}] = e.value;
      return p;
    }
    case K::QuantumVar: {
      const PolyOperand& op = refs.at(static_cast<std::size_t>(e.ref));
      const auto& f = op.format;
      PhasePolynomial p;
      for (int j = 0; j < f.size; ++j) {
        Rational w = pow2(j - f.fraction_digits);
        if (f.is_signed && j == f.size - 1) w = -w;
        p[{op.qubits.at(static_cast<std::size_t>(j))}] += w;
      }
      return p;
    }
    case K::ClassicalVar:
      throw SynthError("NonPolynomial", "unbound classical name '" + e.name + "'", e.span);
    case K::Unary:
      if (e.unary_op != frontend::UnaryOp::Neg)
        throw SynthError("NonPolynomial", std::string("operator '") + frontend::spelling(e.unary_op) +
                                              "' is not allowed in a phase expression",
                         e.span);
      return poly_add({}, expand(*e.operands[0], refs), -1);
    case K::Binary:
      break;
  }
  const auto& l = *e.operands[0];
  const auto& r = *e.operands[1];
  switch (e.binary_op) {
    case BinaryOp::Add:
      return poly_add(expand(l, refs), expand(r, refs), 1);
    case BinaryOp::Sub:
      return poly_add(expand(l, refs), expand(r, refs), -1);
    case BinaryOp::Mul:
      return poly_mul(expand(l, refs), expand(r, refs));
    case BinaryOp::Div: {
      Rational d = poly_constant(expand(r, refs), r, "divisor");
      if (d == 0) throw SynthError("NonPolynomial", "division by zero", e.span);
      return poly_mul(expand(l, refs), {{{}, Rational(1) / d}});
    }
    case BinaryOp::Pow: {
      Rational k = poly_constant(expand(r, refs), r, "exponent");
      if (!is_integer(k) || k < 0 || k > 64)
        throw SynthError("NonPolynomial", "exponent must be a small non-negative integer", e.span);
      PhasePolynomial base = expand(l, refs);
      PhasePolynomial acc{{{}, Rational(1)}};
      for (int i = 0; i < static_cast<int>(to_int64(floor_int(k))); ++i) acc = poly_mul(acc, base);
      return acc;
    }
    case BinaryOp::Shl:
    case BinaryOp::Shr: {
      Rational k = poly_constant(expand(r, refs), r, "shift amount");
      if (!is_integer(k) || k < -4096 || k > 4096)
        throw SynthError("NonPolynomial", "shift amount must be an integer", e.span);
      int n = static_cast<int>(to_int64(floor_int(k)));
      return poly_mul(expand(l, refs), {{{}, pow2(e.binary_op == BinaryOp::Shl ? n : -n)}});
    }
    default:
      throw SynthError("NonPolynomial", std::string("operator '") + frontend::spelling(e.binary_op) +
                                            "' is not allowed in a phase expression",
                       e.span);
  }
}

}  // namespace

PhasePolynomial expr_to_phase_polynomial(const types::NumExpr& expr, const std::vector<PolyOperand>& refs) {
  return expand(expr, refs);
}

std::vector<Gate> phase_gates(const PhasePolynomial& poly, double theta) {
  std::vector<Gate> out;
  for (const auto& [m, c] : poly) {
    if (m.empty()) continue;
    double a = std::remainder(theta * to_double(c), 2 * M_PI);
    if (std::abs(a) < 1e-15) continue;
    out.push_back(Gate::mcp(a, m));
  }
  return out;
}

SynthResult synthesize(const sema::TypedProgram& program, const SynthOptions& options) {
  return Synth(program, options).run();
}

}  // namespace qmod::synth
