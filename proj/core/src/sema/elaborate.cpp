#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <set>

#include "qmod/sema/analyze.hpp"

namespace qmod::sema {

using frontend::ClassicalValue;
using frontend::Expr;
using frontend::ExprKind;
using frontend::Path;
using frontend::PathElem;
using types::FixedPointFormat;
using types::NumExpr;
using types::NumExprPtr;
using types::QType;

namespace {

class SemaError : public Error {
 public:
  SemaError(const std::string& kind, const std::string& m, SourceSpan s, std::string hint = {})
      : Error(kind, m, s), hint_(std::move(hint)) {}
  const std::string& hint() const { return hint_; }

 private:
  std::string hint_;
};

class Elaborator;

struct Binding {
  VarId var = -1;
  /// Whole-variable bindings follow the variable's type; slices carry a view.
  bool whole = true;
  int offset = 0;
  std::optional<QType> view;
  TypePattern decl;
};

struct Frame {
  std::string function;
  bool is_main = false;
  std::vector<VarId> locals;
};

struct Scope;

struct Callable {
  const frontend::FuncDecl* func = nullptr;
  const frontend::Lambda* lambda = nullptr;
  Scope* env = nullptr;
  std::vector<TypePattern> params;
};

struct Scope : frontend::ClassicalEnv {
  Scope(Elaborator* el, Scope* parent, Frame* frame) : el(el), parent(parent), frame(frame) {}

  Elaborator* el;
  Scope* parent;
  Frame* frame;
  std::map<std::string, Binding> quantum;
  std::map<std::string, ClassicalValue> classical;
  std::map<std::string, Callable> callables;

  bool declares(const std::string& n) const {
    return quantum.count(n) || classical.count(n) || callables.count(n);
  }
  const Scope* owner_of(const std::string& n) const {
    for (const Scope* s = this; s; s = s->parent)
      if (s->declares(n)) return s;
    return nullptr;
  }
  Binding* find_quantum(const std::string& n) {
    for (Scope* s = this; s; s = s->parent) {
      if (auto it = s->quantum.find(n); it != s->quantum.end()) return &it->second;
      if (s->declares(n)) return nullptr;
    }
    return nullptr;
  }
  const Callable* find_callable(const std::string& n) const {
    for (const Scope* s = this; s; s = s->parent) {
      if (auto it = s->callables.find(n); it != s->callables.end()) return &it->second;
      if (s->declares(n)) return nullptr;
    }
    return nullptr;
  }

  const ClassicalValue* lookup(const std::string& name) const override;
  std::optional<Rational> quantum_attribute(const Path& path, std::size_t elem_count,
                                            const std::string& attr) const override;
  bool is_quantum(const std::string& name) const override {
    const Scope* s = owner_of(name);
    return s && s->quantum.count(name);
  }
};

/// Quantum operands of one expression, deduplicated by qubit range.
struct RefTable {
  std::vector<TRef> refs;

  int add(TRef r) {
    for (std::size_t i = 0; i < refs.size(); ++i)
      if (refs[i].var == r.var && refs[i].offset == r.offset && refs[i].size == r.size) return static_cast<int>(i);
    for (const auto& o : refs)
      if (o.text == r.text) {
        r.text += "#" + std::to_string(refs.size());
        break;
      }
    refs.push_back(std::move(r));
    return static_cast<int>(refs.size()) - 1;
  }
};

bool is_gate_name(const std::string& n) {
  static const std::set<std::string> names = {"H",  "X",  "Y",  "Z",  "S",    "T",  "RX",
                                              "RY", "RZ", "CX", "CCX", "SWAP", "hadamard_transform"};
  return names.count(n) != 0;
}

class Elaborator {
 public:
  Elaborator(const frontend::Program& program, const AnalysisOptions& options)
      : program_(program), options_(options) {
    tp_.machine_precision = options.machine_precision;
  }

  AnalysisResult run() {
    try {
      elaborate_main();
    } catch (const Error& e) {
      report(e);
    }
    return {std::move(tp_), std::move(diags_)};
  }

  const AnalysisOptions& options() const { return options_; }

  TRef resolve_path(const Path& path, Scope& sc) const;
  std::optional<QType> view_of(const Binding& b) const {
    if (!b.whole) return b.view;
    const Var& v = tp_.vars[static_cast<std::size_t>(b.var)];
    if (!v.type) return std::nullopt;
    return complete(b.decl, *v.type);
  }

 private:
  const frontend::Program& program_;
  const AnalysisOptions& options_;
  TypedProgram tp_;
  DiagnosticList diags_;
  std::map<std::string, QType> records_;
  int depth_ = 0;

  Var& var(VarId id) { return tp_.vars[static_cast<std::size_t>(id)]; }

  void report(const Error& e) {
    Diagnostic d = e.to_diagnostic();
    if (auto* s = dynamic_cast<const SemaError*>(&e); s && !s->hint().empty()) d.hint = s->hint();
    if (auto* u = dynamic_cast<const types::UnsupportedOperator*>(&e); u && !u->hint().empty()) d.hint = u->hint();
    diags_.add(std::move(d));
  }

  VarId new_var(std::string name, TypePattern decl, SourceSpan span, Frame& frame) {
    Var v;
    v.name = std::move(name);
    v.declared = decl;
    if (decl.is_concrete()) v.type = decl.to_qtype();
    v.span = span;
    v.owner = frame.function;
    tp_.vars.push_back(std::move(v));
    VarId id = static_cast<VarId>(tp_.vars.size()) - 1;
    frame.locals.push_back(id);
    return id;
  }

  // ---- types -------------------------------------------------------------

  QType record_type(const std::string& name, SourceSpan span) {
    if (auto it = records_.find(name); it != records_.end()) return it->second;
    const frontend::RecordDef* def = program_.find_record(name);
    if (!def) throw SemaError("UnknownIdentifier", "unknown type '" + name + "'", span);
    Frame global{"<global>", false, {}};
    Scope sc(this, nullptr, &global);
    std::vector<QType::Field> fields;
    std::set<std::string> seen;
    for (const auto& f : def->fields) {
      if (!seen.insert(f.name).second)
        throw SemaError("TypeMismatch", "duplicate field '" + f.name + "' in '" + name + "'", f.span);
      TypePattern p = eval_pattern(f.type, sc);
      if (!p.is_concrete())
        throw SemaError("TypeMismatch", "field '" + f.name + "' of '" + name + "' needs a fully specified type",
                        f.span);
      fields.push_back({f.name, std::make_shared<const QType>(p.to_qtype())});
    }
    if (fields.empty()) throw SemaError("TypeMismatch", "record '" + name + "' has no fields", def->span);
    QType t = QType::record(name, std::move(fields));
    records_.emplace(name, t);
    return t;
  }

  TypePattern eval_pattern(const frontend::QTypeExpr& t, Scope& sc) {
    using K = frontend::QTypeExpr::Kind;
    switch (t.kind) {
      case K::Bit:
        return TypePattern::bit();
      case K::Num: {
        if (!t.size) {
          if (t.is_signed || t.fraction_digits)
            throw SemaError("TypeMismatch", "qnum attributes need a size", t.span);
          return TypePattern::num();
        }
        auto size = frontend::eval_int(*t.size, sc, "qnum size");
        bool sgn = t.is_signed.value_or(false);
        std::int64_t frac = t.fraction_digits ? frontend::eval_int(*t.fraction_digits, sc, "fraction digits") : 0;
        if (size < 1 || size > 4096 || frac < 0 || frac > size || (sgn && size < frac + 1))
          throw SemaError("TypeMismatch",
                          "invalid numeric format (size " + std::to_string(size) + ", " +
                              (sgn ? "signed" : "unsigned") + ", " + std::to_string(frac) + " fraction digits)",
                          t.span);
        return TypePattern::num(FixedPointFormat(static_cast<int>(size), sgn, static_cast<int>(frac)));
      }
      case K::Array: {
        TypePattern elem = eval_pattern(*t.element, sc);
        std::optional<int> len;
        if (t.length) {
          auto n = frontend::eval_int(*t.length, sc, "array length");
          if (n < 1 || n > 65536)
            throw SemaError("TypeMismatch", "array length must be positive, got " + std::to_string(n), t.span);
          len = static_cast<int>(n);
        }
        return TypePattern::array(std::move(elem), len);
      }
      case K::Named: {
        TypePattern p;
        p.kind = TypePattern::Kind::Record;
        p.record = record_type(t.name, t.span);
        return p;
      }
    }
    return TypePattern::bit();
  }

  void check_classical(const frontend::CTypeExpr& t, const ClassicalValue& v, const std::string& what,
                       SourceSpan span, Scope& sc) {
    using K = frontend::CTypeExpr::Kind;
    switch (t.kind) {
      case K::Int:
        if (v.is_array() || !is_integer(v.scalar()))
          throw SemaError("TypeMismatch", what + " must be an integer", span);
        return;
      case K::Real:
        if (v.is_array()) throw SemaError("TypeMismatch", what + " must be a scalar", span);
        return;
      case K::Array: {
        if (!v.is_array()) throw SemaError("TypeMismatch", what + " must be an array", span);
        if (t.length) {
          auto n = frontend::eval_int(*t.length, sc, "array length");
          if (static_cast<std::int64_t>(v.elements().size()) != n)
            throw SemaError("TypeMismatch",
                            what + " must have " + std::to_string(n) + " elements, got " +
                                std::to_string(v.elements().size()),
                            span);
        }
        for (const auto& e : v.elements()) check_classical(*t.element, e, what + " element", span, sc);
        return;
      }
    }
  }

  // Type of a whole-variable binding that is fixed before initialization.
  std::optional<QType> fixed_view(const Binding& b) {
    if (b.decl.is_concrete()) return b.decl.to_qtype();
    const Var& v = var(b.var);
    if (v.declared.is_concrete()) return complete(b.decl, *v.type);
    return std::nullopt;
  }

  void set_var_type(VarId id, const QType& object, SourceSpan span) {
    Var& v = var(id);
    try {
      v.type = complete(v.declared, object);
    } catch (const TypeMismatch& e) {
      throw SemaError("TypeMismatch", "'" + v.name + "': " + e.detail(), span);
    }
  }

  Binding& whole_binding(const Path& p, Scope& sc, const char* what) {
    if (!p.elems.empty())
      throw SemaError("TypeMismatch", std::string(what) + " must be a variable name, not a path", p.span);
    Binding* b = sc.find_quantum(p.root);
    if (!b) throw unknown_quantum(p.root, p.span, sc);
    if (!b->whole)
      throw SemaError("TypeMismatch", std::string(what) + " '" + p.root + "' is a parameter viewing part of an object",
                      p.span);
    return *b;
  }

  SemaError unknown_quantum(const std::string& name, SourceSpan span, Scope& sc) const {
    if (sc.lookup(name)) return SemaError("TypeMismatch", "'" + name + "' is classical, not quantum", span);
    if (sc.find_callable(name)) return SemaError("TypeMismatch", "'" + name + "' is a function, not a variable", span);
    return SemaError("UnknownIdentifier", "unknown identifier '" + name + "'", span);
  }

  // ---- expressions -----------------------------------------------------------

  NumExprPtr num_expr(const Expr& e, Scope& sc, RefTable& rt) {
    if (frontend::is_classical(e, sc)) return NumExpr::constant(frontend::eval_classical(e, sc), e.span);
    switch (e.kind) {
      case ExprKind::PathRef: {
        TRef r = resolve_path(e.path, sc);
        int idx = rt.add(r);
        return NumExpr::quantum(rt.refs[static_cast<std::size_t>(idx)].text, idx, e.span);
      }
      case ExprKind::Unary:
        return NumExpr::unary(e.unary_op, num_expr(*e.operands[0], sc, rt), e.span);
      case ExprKind::Binary:
        if (e.binary_op == frontend::BinaryOp::Div && !frontend::is_classical(*e.operands[1], sc))
          throw SemaError("UnsupportedOperator", "division by a quantum value is not supported", e.span,
                          "only classical divisors are allowed");
        return NumExpr::binary(e.binary_op, num_expr(*e.operands[0], sc, rt), num_expr(*e.operands[1], sc, rt),
                               e.span);
      case ExprKind::Call:
        throw SemaError("UnsupportedOperator", "'" + e.callee + "' takes classical arguments only", e.span);
      case ExprKind::Number:
        break;
    }
    return NumExpr::constant(e.number, e.span);
  }

  types::ExprPlan plan(const TStmt& s, std::optional<int> needed) {
    types::ExprPlan p = plan_statement_expr(s, options_.machine_precision, needed);
    for (auto& w : p.warnings) diags_.add(w);
    return p;
  }

  static void require_polynomial(const NumExpr& e) {
    using frontend::BinaryOp;
    if (e.kind == NumExpr::Kind::Unary && e.unary_op != frontend::UnaryOp::Neg && e.has_quantum())
      throw SemaError("NonPolynomial",
                      std::string("operator '") + frontend::spelling(e.unary_op) + "' is not allowed in a phase expression",
                      e.span, "phase expressions are polynomials: + - * ** and classical division");
    if (e.kind == NumExpr::Kind::Binary && e.has_quantum()) {
      switch (e.binary_op) {
        case BinaryOp::Add:
        case BinaryOp::Sub:
        case BinaryOp::Mul:
        case BinaryOp::Div:
        case BinaryOp::Pow:
        case BinaryOp::Shl:
        case BinaryOp::Shr:
          break;
        default:
          throw SemaError("NonPolynomial",
                          std::string("operator '") + frontend::spelling(e.binary_op) +
                              "' is not allowed in a phase expression",
                          e.span, "phase expressions are polynomials: + - * ** and classical division");
      }
    }
    for (const auto& o : e.operands) require_polynomial(*o);
  }

  // ---- statements ------------------------------------------------------------

  std::vector<TStmt> block(const frontend::Block& b, Scope& parent) {
    Scope sc(this, &parent, parent.frame);
    std::vector<TStmt> out;
    for (const auto& s : b) {
      try {
        stmt(s, sc, out);
      } catch (const Error& e) {
        report(e);
      }
    }
    return out;
  }

  void stmt(const frontend::Stmt& s, Scope& sc, std::vector<TStmt>& out) {
    std::visit([&](const auto& n) { this->on(n, s.span, sc, out); }, s.node);
  }

  void on(const frontend::DeclStmt& d, SourceSpan span, Scope& sc, std::vector<TStmt>&) {
    if (sc.declares(d.name))
      throw SemaError("Redeclaration", "'" + d.name + "' is already declared in this scope", span);
    TypePattern p = eval_pattern(d.type, sc);
    VarId id = new_var(d.name, p, span, *sc.frame);
    sc.quantum[d.name] = Binding{id, true, 0, std::nullopt, p};
  }

  void on(const frontend::AllocateStmt& a, SourceSpan span, Scope& sc, std::vector<TStmt>& out) {
    Binding& b = whole_binding(a.target, sc, "allocate target");
    QType object;
    if (a.size) {
      auto n = frontend::eval_int(*a.size, sc, "allocation size");
      if (n < 1 || n > 4096)
        throw SemaError("InvalidCount", "allocation size must be positive, got " + std::to_string(n), a.size->span);
      try {
        object = complete(b.decl, QType::num(FixedPointFormat(static_cast<int>(n), false, 0)));
        if (auto fixed = fixed_view(b); fixed && fixed->size() != n)
          throw TypeMismatch("'" + a.target.root + "' has " + std::to_string(fixed->size()) + " qubits");
      } catch (const TypeMismatch& e) {
        throw SemaError("TypeMismatch", "allocate(" + std::to_string(n) + ", " + a.target.root + "): " + e.detail(),
                        span);
      }
    } else if (auto fixed = fixed_view(b)) {
      object = *fixed;
    } else {
      throw SemaError("TypeMismatch", "cannot allocate '" + a.target.root + "' of unknown size", span,
                      "give the qubit count: allocate(n, " + a.target.root + ")");
    }
    set_var_type(b.var, object, span);
    TStmt t;
    t.kind = TStmt::Kind::Allocate;
    t.span = span;
    t.target = b.var;
    t.type = *var(b.var).type;
    out.push_back(std::move(t));
  }

  void on(const frontend::AssignStmt& a, SourceSpan span, Scope& sc, std::vector<TStmt>& out) {
    TStmt t;
    t.span = span;
    RefTable rt;
    if (a.op == frontend::AssignOp::OutOfPlace) {
      Binding& b = whole_binding(a.target, sc, "assignment target");
      t.kind = TStmt::Kind::Assign;
      t.expr = num_expr(*a.value, sc, rt);
      t.refs = rt.refs;
      for (const auto& r : t.refs)
        if (r.var == b.var)
          throw SemaError("UseBeforeInit", "'" + a.target.root + "' is used in its own initialization", r.span);
      auto fixed = fixed_view(b);
      std::optional<int> needed;
      if (fixed) needed = fixed->numeric_view().fraction_digits;
      types::ExprPlan p = plan(t, needed);
      QType object;
      try {
        object = fixed ? *fixed : complete(b.decl, QType::num(p.root.format));
      } catch (const TypeMismatch& e) {
        throw SemaError("TypeMismatch", "'" + a.target.root + "': " + e.detail(), span);
      }
      set_var_type(b.var, object, span);
      t.target = b.var;
      t.type = *var(b.var).type;
      t.format = object.numeric_view();
      out.push_back(std::move(t));
      return;
    }
    t.kind = a.op == frontend::AssignOp::InplaceXor ? TStmt::Kind::InplaceXor : TStmt::Kind::InplaceAdd;
    t.lhs = resolve_path(a.target, sc);
    t.expr = num_expr(*a.value, sc, rt);
    t.refs = rt.refs;
    for (const auto& r : t.refs)
      if (r.overlaps(*t.lhs))
        throw SemaError("Aliasing", "'" + t.lhs->text + "' appears on both sides of '" + frontend::spelling(a.op) + "'",
                        r.span, "compute the expression into a temporary first");
    plan(t, t.lhs->view.numeric_view().fraction_digits);
    out.push_back(std::move(t));
  }

  void on(const frontend::PhaseStmt& p, SourceSpan span, Scope& sc, std::vector<TStmt>& out) {
    RefTable rt;
    TStmt t;
    t.kind = TStmt::Kind::Phase;
    t.span = span;
    t.expr = num_expr(*p.expr, sc, rt);
    t.refs = rt.refs;
    require_polynomial(*t.expr);
    t.theta = to_double(frontend::eval_classical(*p.angle, sc));
    if (t.refs.empty()) return;  // global phase
    out.push_back(std::move(t));
  }

  void on(const frontend::AmplitudeStmt& a, SourceSpan span, Scope& sc, std::vector<TStmt>& out) {
    RefTable rt;
    TStmt t;
    t.kind = TStmt::Kind::Amplitude;
    t.span = span;
    t.expr = num_expr(*a.expr, sc, rt);
    t.refs = rt.refs;
    t.lhs = resolve_path(a.indicator, sc);
    if (t.lhs->size != 1)
      throw SemaError("TypeMismatch", "indicator '" + t.lhs->text + "' must be a single qubit", a.indicator.span);
    for (const auto& r : t.refs)
      if (r.overlaps(*t.lhs))
        throw SemaError("Aliasing", "indicator '" + t.lhs->text + "' appears in the expression", r.span);
    plan(t, std::nullopt);
    out.push_back(std::move(t));
  }

  static void collect_refs(const std::vector<TStmt>& body, std::vector<TRef>& acc, std::set<VarId>& inits) {
    for (const auto& s : body) {
      if (s.lhs) acc.push_back(*s.lhs);
      acc.insert(acc.end(), s.refs.begin(), s.refs.end());
      acc.insert(acc.end(), s.qubits.begin(), s.qubits.end());
      acc.insert(acc.end(), s.inputs.begin(), s.inputs.end());
      if (s.target >= 0) inits.insert(s.target);
      for (VarId o : s.outputs) inits.insert(o);
      collect_refs(s.body, acc, inits);
      collect_refs(s.apply, acc, inits);
    }
  }

  void on(const frontend::ControlStmt& c, SourceSpan span, Scope& sc, std::vector<TStmt>& out) {
    TStmt t;
    t.kind = TStmt::Kind::Control;
    t.span = span;
    const Expr& cond = *c.condition;
    std::vector<TRef> controls;
    if (cond.kind == ExprKind::PathRef && sc.is_quantum(cond.path.root)) {
      t.lhs = resolve_path(cond.path, sc);
      controls.push_back(*t.lhs);
    } else if (frontend::is_classical(cond, sc)) {
      if (frontend::eval_classical(cond, sc) != 0) {
        auto body = block(c.body, sc);
        out.insert(out.end(), std::make_move_iterator(body.begin()), std::make_move_iterator(body.end()));
      }
      return;
    } else {
      RefTable rt;
      t.expr = num_expr(cond, sc, rt);
      t.refs = rt.refs;
      types::ExprPlan p = plan(t, 0);
      const auto& v = p.root.value;
      if (v.lo < 0 || v.hi > 1 || v.frac != 0)
        throw SemaError("NonBooleanCondition",
                        "control condition must be boolean, but its values range over " + v.to_string(), cond.span,
                        "compare explicitly, e.g. 'x != 0'");
      controls = t.refs;
    }
    t.body = block(c.body, sc);
    if (t.lhs) {
      std::vector<TRef> used;
      std::set<VarId> inits;
      collect_refs(t.body, used, inits);
      for (const auto& u : used)
        if (u.overlaps(*t.lhs))
          throw SemaError("OverlappingControl", "control qubits '" + t.lhs->text + "' are used inside the controlled block",
                          u.span);
      if (inits.count(t.lhs->var))
        throw SemaError("OverlappingControl", "control variable '" + t.lhs->text + "' is initialized inside the block",
                        span);
    }
    out.push_back(std::move(t));
  }

  void on(const frontend::RepeatStmt& r, SourceSpan span, Scope& sc, std::vector<TStmt>& out) {
    auto n = frontend::eval_int(*r.count, sc, "repeat count");
    if (n < 0) throw SemaError("NegativeCount", "repeat count must not be negative, got " + std::to_string(n), span);
    if (n > 100000) throw SemaError("InvalidCount", "repeat count " + std::to_string(n) + " is too large", span);
    for (std::int64_t i = 0; i < n; ++i) {
      Scope it(this, &sc, sc.frame);
      it.classical[r.iterator] = ClassicalValue(Rational(i));
      auto body = block(r.body, it);
      out.insert(out.end(), std::make_move_iterator(body.begin()), std::make_move_iterator(body.end()));
    }
  }

  void on(const frontend::WithinApplyStmt& w, SourceSpan span, Scope& sc, std::vector<TStmt>& out) {
    TStmt t;
    t.kind = TStmt::Kind::WithinApply;
    t.span = span;
    t.body = block(w.within, sc);
    t.apply = block(w.apply, sc);
    out.push_back(std::move(t));
  }

  void on(const frontend::InvertStmt& i, SourceSpan span, Scope& sc, std::vector<TStmt>& out) {
    TStmt t;
    t.kind = TStmt::Kind::Invert;
    t.span = span;
    t.body = block(i.body, sc);
    out.push_back(std::move(t));
  }

  void on(const frontend::PowerStmt& p, SourceSpan span, Scope& sc, std::vector<TStmt>& out) {
    auto k = frontend::eval_int(*p.exponent, sc, "power exponent");
    if (k < 0) throw SemaError("NegativeCount", "power exponent must not be negative", p.exponent->span);
    if (k > 100000) throw SemaError("InvalidCount", "power exponent is too large", p.exponent->span);
    TStmt t;
    t.kind = TStmt::Kind::Power;
    t.span = span;
    t.exponent = static_cast<int>(k);
    t.body = block(p.body, sc);
    out.push_back(std::move(t));
  }

  void on(const frontend::CallStmt& c, SourceSpan span, Scope& sc, std::vector<TStmt>& out) {
    if (const Callable* cb = sc.find_callable(c.callee)) {
      invoke(*cb, c, span, sc, out);
    } else if (const frontend::FuncDecl* f = program_.find_func(c.callee)) {
      if (f->name == "main") throw SemaError("TypeMismatch", "'main' cannot be called", c.callee_span);
      inline_function(*f, c, span, sc, out);
    } else if (is_gate_name(c.callee)) {
      builtin(c, span, sc, out);
    } else if (sc.is_quantum(c.callee) || sc.lookup(c.callee)) {
      throw SemaError("TypeMismatch", "'" + c.callee + "' is not a function", c.callee_span);
    } else {
      throw SemaError("UnknownIdentifier", "unknown function '" + c.callee + "'", c.callee_span);
    }
  }

  // ---- calls -------------------------------------------------------------------

  TRef quantum_arg(const frontend::Arg& a, Scope& sc, const std::string& param) {
    const Expr* e = a.expr();
    if (!e || e->kind != ExprKind::PathRef || !sc.is_quantum(e->path.root))
      throw SemaError("TypeMismatch", "argument for quantum parameter '" + param + "' must be a quantum variable",
                      a.span);
    return resolve_path(e->path, sc);
  }

  static void check_aliasing(const std::vector<TRef>& args) {
    for (std::size_t i = 0; i < args.size(); ++i)
      for (std::size_t j = i + 1; j < args.size(); ++j)
        if (args[i].overlaps(args[j]))
          throw SemaError("Aliasing",
                          "arguments '" + args[i].text + "' and '" + args[j].text + "' refer to overlapping qubits",
                          args[j].span, "each quantum object may be passed only once per call");
  }

  struct DepthGuard {
    int& d;
    explicit DepthGuard(int& d, const std::string& f, SourceSpan span) : d(d) {
      if (++d > 64) {
        --d;
        throw SemaError("RecursionLimit", "call depth exceeds 64 while expanding '" + f + "'", span,
                        "recursive functions are not supported");
      }
    }
    ~DepthGuard() { --d; }
  };

  void inline_function(const frontend::FuncDecl& f, const frontend::CallStmt& c, SourceSpan span, Scope& caller,
                       std::vector<TStmt>& out) {
    DepthGuard guard(depth_, f.name, span);
    if (c.args.size() != f.params.size())
      throw SemaError("ArityMismatch",
                      "'" + f.name + "' expects " + std::to_string(f.params.size()) + " arguments, got " +
                          std::to_string(c.args.size()),
                      span);
    Frame frame{f.name, false, {}};
    Scope callee(this, nullptr, &frame);
    TStmt t;
    t.kind = TStmt::Kind::Scope;
    t.span = span;
    t.function = f.name;

    // Classical parameters first: quantum parameter types may refer to them.
    for (std::size_t i = 0; i < f.params.size(); ++i) {
      const auto& p = f.params[i];
      const auto& a = c.args[i];
      if (p.is_classical()) {
        const Expr* e = a.expr();
        if (!e || !frontend::is_classical(*e, caller))
          throw SemaError("TypeMismatch", "argument for classical parameter '" + p.name + "' must be classical",
                          a.span);
        ClassicalValue v = frontend::eval_classical_value(*e, caller);
        check_classical(std::get<frontend::CTypeExpr>(p.type), v, "argument '" + p.name + "'", a.span, callee);
        callee.classical[p.name] = std::move(v);
      } else if (p.is_function()) {
        callee.callables[p.name] = callable_arg(std::get<frontend::FnTypeExpr>(p.type), a, caller, callee, p.name);
      }
    }

    std::vector<TRef> alias;
    for (std::size_t i = 0; i < f.params.size(); ++i) {
      const auto& p = f.params[i];
      const auto& a = c.args[i];
      if (!p.is_quantum()) continue;
      TypePattern pat = eval_pattern(std::get<frontend::QTypeExpr>(p.type), callee);
      if (p.is_output) {
        const Expr* e = a.expr();
        if (!e || e->kind != ExprKind::PathRef || !e->path.elems.empty() || !caller.is_quantum(e->path.root))
          throw SemaError("TypeMismatch", "argument for output parameter '" + p.name + "' must be a variable name",
                          a.span);
        Binding& b = whole_binding(e->path, caller, "output argument");
        const Var& v = var(b.var);
        if (v.type && v.declared.is_concrete()) {
          try {
            complete(pat, *v.type);
          } catch (const TypeMismatch& m) {
            throw SemaError("TypeMismatch", "argument '" + e->path.root + "' for parameter '" + p.name + "': " +
                                                m.detail(),
                            a.span);
          }
        }
        callee.quantum[p.name] = Binding{b.var, true, 0, std::nullopt, pat};
        t.outputs.push_back(b.var);
        TRef whole{b.var, 0, INT_MAX / 2, QType::bit(), e->path.root, a.span};
        alias.push_back(whole);
      } else {
        TRef r = quantum_arg(a, caller, p.name);
        QType view;
        try {
          view = complete(pat, r.view);
        } catch (const TypeMismatch& m) {
          throw SemaError("TypeMismatch", "argument '" + r.text + "' for parameter '" + p.name + "': " + m.detail(),
                          a.span);
        }
        callee.quantum[p.name] = Binding{r.var, false, r.offset, view, pat};
        t.inputs.push_back(r);
        alias.push_back(r);
      }
    }
    check_aliasing(alias);
    t.body = block(f.body, callee);
    t.locals = frame.locals;
    out.push_back(std::move(t));
  }

  Callable callable_arg(const frontend::FnTypeExpr& ft, const frontend::Arg& a, Scope& caller, Scope& callee,
                        const std::string& param) {
    Callable cb;
    for (const auto& q : ft.params) cb.params.push_back(eval_pattern(q, callee));
    if (const frontend::Lambda* l = a.lambda()) {
      if (l->params.size() != ft.params.size())
        throw SemaError("ArityMismatch",
                        "lambda for '" + param + "' takes " + std::to_string(l->params.size()) +
                            " parameters, expected " + std::to_string(ft.params.size()),
                        l->span);
      cb.lambda = l;
      cb.env = &caller;
      return cb;
    }
    const Expr* e = a.expr();
    if (e && e->kind == ExprKind::PathRef && e->path.elems.empty()) {
      if (const Callable* inner = caller.find_callable(e->path.root)) return *inner;
      if (const frontend::FuncDecl* f = program_.find_func(e->path.root)) {
        if (f->params.size() != ft.params.size())
          throw SemaError("ArityMismatch", "function '" + f->name + "' does not match the type of '" + param + "'",
                          a.span);
        cb.func = f;
        return cb;
      }
    }
    throw SemaError("TypeMismatch", "argument for '" + param + "' must be a lambda or a function name", a.span);
  }

  void invoke(const Callable& cb, const frontend::CallStmt& c, SourceSpan span, Scope& caller,
              std::vector<TStmt>& out) {
    if (cb.func) {
      inline_function(*cb.func, c, span, caller, out);
      return;
    }
    DepthGuard guard(depth_, c.callee, span);
    const frontend::Lambda& l = *cb.lambda;
    if (c.args.size() != l.params.size())
      throw SemaError("ArityMismatch",
                      "'" + c.callee + "' expects " + std::to_string(l.params.size()) + " arguments, got " +
                          std::to_string(c.args.size()),
                      span);
    Scope ls(this, cb.env, cb.env->frame);
    TStmt t;
    t.kind = TStmt::Kind::Scope;
    t.span = span;
    t.function = c.callee;
    for (std::size_t i = 0; i < l.params.size(); ++i) {
      TRef r = quantum_arg(c.args[i], caller, l.params[i]);
      QType view;
      try {
        view = complete(cb.params[i], r.view);
      } catch (const TypeMismatch& m) {
        throw SemaError("TypeMismatch", "argument '" + r.text + "': " + m.detail(), c.args[i].span);
      }
      ls.quantum[l.params[i]] = Binding{r.var, false, r.offset, view, cb.params[i]};
      t.inputs.push_back(r);
    }
    check_aliasing(t.inputs);
    t.body = block(l.body, ls);
    out.push_back(std::move(t));
  }

  std::vector<TRef> split_qubits(const TRef& r) {
    std::vector<TRef> out;
    for (int i = 0; i < r.size; ++i) {
      TRef q = r;
      q.offset = r.offset + i;
      q.size = 1;
      q.view = QType::bit();
      if (r.size > 1) q.text = r.text + "<" + std::to_string(i) + ">";
      out.push_back(std::move(q));
    }
    return out;
  }

  void builtin(const frontend::CallStmt& c, SourceSpan span, Scope& sc, std::vector<TStmt>& out) {
    using ir::GateKind;
    static const std::map<std::string, GateKind> one = {{"H", GateKind::H}, {"X", GateKind::X}, {"Y", GateKind::Y},
                                                        {"Z", GateKind::Z}, {"S", GateKind::S}, {"T", GateKind::T}};
    static const std::map<std::string, GateKind> rot = {
        {"RX", GateKind::RX}, {"RY", GateKind::RY}, {"RZ", GateKind::RZ}};
    const std::string& n = c.callee;
    auto arity = [&](std::size_t k) {
      if (c.args.size() != k)
        throw SemaError("ArityMismatch",
                        "'" + n + "' expects " + std::to_string(k) + " arguments, got " + std::to_string(c.args.size()),
                        span);
    };
    auto qubit = [&](const frontend::Arg& a) {
      TRef r = quantum_arg(a, sc, n);
      if (r.size != 1)
        throw SemaError("TypeMismatch", "'" + n + "' expects a single qubit, got '" + r.text + "' (" +
                                            std::to_string(r.size) + " qubits)",
                        a.span);
      return r;
    };
    auto emit = [&](GateKind k, std::vector<TRef> qs, double theta) {
      for (std::size_t i = 0; i < qs.size(); ++i)
        for (std::size_t j = i + 1; j < qs.size(); ++j)
          if (qs[i].overlaps(qs[j]))
            throw SemaError("Aliasing", "'" + n + "' operands must be distinct qubits", span);
      TStmt t;
      t.kind = TStmt::Kind::Gate;
      t.span = span;
      t.gate = k;
      t.qubits = std::move(qs);
      t.theta = theta;
      out.push_back(std::move(t));
    };

    if (auto it = one.find(n); it != one.end()) {
      arity(1);
      emit(it->second, {qubit(c.args[0])}, 0.0);
    } else if (auto r = rot.find(n); r != rot.end()) {
      arity(2);
      const Expr* e = c.args[0].expr();
      if (!e || !frontend::is_classical(*e, sc))
        throw SemaError("TypeMismatch", "the angle of '" + n + "' must be classical", c.args[0].span);
      emit(r->second, {qubit(c.args[1])}, to_double(frontend::eval_classical(*e, sc)));
    } else if (n == "CX" || n == "SWAP") {
      arity(2);
      emit(n == "CX" ? GateKind::CX : GateKind::SWAP, {qubit(c.args[0]), qubit(c.args[1])}, 0.0);
    } else if (n == "CCX") {
      if (c.args.size() == 3) {
        emit(GateKind::CCX, {qubit(c.args[0]), qubit(c.args[1]), qubit(c.args[2])}, 0.0);
      } else {
        arity(2);
        TRef ctrl = quantum_arg(c.args[0], sc, n);
        if (ctrl.size != 2)
          throw SemaError("TypeMismatch", "'CCX' expects a 2-qubit control, got '" + ctrl.text + "' (" +
                                              std::to_string(ctrl.size) + " qubits)",
                          c.args[0].span);
        auto qs = split_qubits(ctrl);
        qs.push_back(qubit(c.args[1]));
        emit(GateKind::CCX, std::move(qs), 0.0);
      }
    } else if (n == "hadamard_transform") {
      arity(1);
      TRef r = quantum_arg(c.args[0], sc, n);
      for (auto& q : split_qubits(r)) emit(GateKind::H, {q}, 0.0);
    }
  }

  // ---- main --------------------------------------------------------------------

  void elaborate_main() {
    const frontend::FuncDecl* main = program_.find_func("main");
    if (!main) throw SemaError("UnknownIdentifier", "program has no 'main' function", {});
    std::set<std::string> names;
    for (const auto& f : program_.funcs) {
      std::set<std::string> params;
      for (const auto& p : f.params)
        if (!params.insert(p.name).second)
          report(SemaError("Redeclaration", "duplicate parameter '" + p.name + "' in '" + f.name + "'", p.span));
      if (!names.insert(f.name).second)
        report(SemaError("Redeclaration", "function '" + f.name + "' is defined twice", f.span));
    }

    Frame frame{"main", true, {}};
    Scope sc(this, nullptr, &frame);
    TStmt t;
    t.kind = TStmt::Kind::Scope;
    t.span = main->span;
    t.function = "main";
    t.is_main = true;
    for (const auto& p : main->params) {
      if (p.is_classical()) {
        auto it = options_.arguments.find(p.name);
        if (it == options_.arguments.end())
          throw SemaError("MissingArgument", "no value for main's classical parameter '" + p.name + "'", p.span,
                          "pass it with --arg " + p.name + "=<value>");
        check_classical(std::get<frontend::CTypeExpr>(p.type), it->second, "parameter '" + p.name + "'", p.span, sc);
        sc.classical[p.name] = it->second;
      } else if (p.is_function()) {
        throw SemaError("TypeMismatch", "main cannot take function parameters", p.span);
      }
    }
    for (const auto& p : main->params) {
      if (!p.is_quantum()) continue;
      if (!p.is_output)
        throw SemaError("TypeMismatch", "quantum parameter '" + p.name + "' of main must be an output", p.span,
                        "declare it as '" + p.name + ": output ...'");
      TypePattern pat = eval_pattern(std::get<frontend::QTypeExpr>(p.type), sc);
      VarId id = new_var(p.name, pat, p.span, frame);
      frame.locals.pop_back();
      sc.quantum[p.name] = Binding{id, true, 0, std::nullopt, pat};
      tp_.outputs.push_back(id);
      t.outputs.push_back(id);
    }
    t.body = block(main->body, sc);
    t.locals = frame.locals;
    tp_.body.push_back(std::move(t));
  }
};

const ClassicalValue* Scope::lookup(const std::string& name) const {
  for (const Scope* s = this; s; s = s->parent) {
    if (auto it = s->classical.find(name); it != s->classical.end()) return &it->second;
    if (s->declares(name)) return nullptr;
  }
  const auto& consts = el->options().constants;
  if (auto it = consts.find(name); it != consts.end()) return &it->second;
  return nullptr;
}

std::optional<Rational> Scope::quantum_attribute(const Path& path, std::size_t elem_count,
                                                 const std::string& attr) const {
  if (!is_quantum(path.root)) return std::nullopt;
  Path sub = frontend::clone(path);
  sub.elems.resize(elem_count);
  TRef r = el->resolve_path(sub, const_cast<Scope&>(*this));
  if (attr == "size") return Rational(r.size);
  if (!r.view.is_array())
    throw frontend::EvalError("'" + r.text + "' is not an array; use '.size'", path.span);
  return Rational(r.view.length());
}

TRef Elaborator::resolve_path(const Path& path, Scope& sc) const {
  Binding* b = sc.find_quantum(path.root);
  if (!b) throw unknown_quantum(path.root, path.span, sc);
  auto view = view_of(*b);
  if (!view)
    throw SemaError("UseBeforeInit", "the type of '" + path.root + "' is not known before it is initialized",
                    path.span);
  TRef r;
  r.var = b->var;
  r.offset = b->whole ? 0 : b->offset;
  r.span = path.span;
  QType cur = *view;
  std::string text = path.root;
  for (const auto& el : path.elems) {
    if (el.kind == PathElem::Kind::Field) {
      auto f = cur.is_record() ? cur.field(el.field) : std::nullopt;
      if (!f)
        throw SemaError("UnknownIdentifier", "'" + cur.to_string() + "' has no field '" + el.field + "'", el.span);
      r.offset += f->first;
      text += "." + el.field;
      cur = *f->second;
    } else {
      if (!cur.is_array())
        throw SemaError("TypeMismatch", "cannot index into '" + cur.to_string() + "'", el.span);
      if (!frontend::is_classical(*el.index, sc))
        throw SemaError("UnsupportedOperator", "array indices must be classical", el.span);
      auto i = frontend::eval_int(*el.index, sc, "array index");
      if (i < 0 || i >= cur.length())
        throw SemaError("IndexOutOfRange",
                        "index " + std::to_string(i) + " is out of range for length " + std::to_string(cur.length()),
                        el.span);
      QType e = cur.element();
      r.offset += static_cast<int>(i) * e.size();
      text += "[" + std::to_string(i) + "]";
      cur = e;
    }
  }
  r.size = cur.size();
  r.view = cur;
  r.text = std::move(text);
  return r;
}

}  // namespace

AnalysisResult resolve_and_typecheck(const frontend::Program& program, const AnalysisOptions& options) {
  return Elaborator(program, options).run();
}

AnalysisResult analyze(const frontend::Program& program, const AnalysisOptions& options) {
  AnalysisResult r = resolve_and_typecheck(program, options);
  if (r.diagnostics.has_errors()) return r;
  r.diagnostics.append(check_init_flow(r.program));
  r.diagnostics.append(check_within_apply(r.program));
  return r;
}

}  // namespace qmod::sema
