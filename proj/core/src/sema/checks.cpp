#include <algorithm>
#include <set>

#include "qmod/sema/analyze.hpp"

namespace qmod::sema {

namespace {

class InitFlow {
 public:
  explicit InitFlow(const TypedProgram& p) : p_(p) {}

  DiagnosticList run() {
    block(p_.body);
    return std::move(diags_);
  }

 private:
  const TypedProgram& p_;
  DiagnosticList diags_;
  std::set<VarId> live_;

  const std::string& name(VarId v) const { return p_.var(v).name; }

  void use(const TRef& r) {
    if (!live_.count(r.var))
      diags_.error("'" + r.text + "' is used before it is initialized", r.span,
                   "assign it or allocate it first");
  }

  void init(VarId v, SourceSpan span) {
    if (!live_.insert(v).second)
      diags_.error("'" + name(v) + "' is already initialized", span, "a variable can be initialized only once");
  }

  void no_net_init(const std::set<VarId>& before, const char* what, SourceSpan span) {
    for (VarId v : live_)
      if (!before.count(v))
        diags_.error("'" + name(v) + "' is initialized inside " + std::string(what) + " and never uncomputed", span,
                     "move the initialization into a within block");
    live_ = before;
  }

  void block(const std::vector<TStmt>& body) {
    for (const auto& s : body) stmt(s);
  }

  void stmt(const TStmt& s) {
    using K = TStmt::Kind;
    switch (s.kind) {
      case K::Allocate:
        init(s.target, s.span);
        break;
      case K::Assign:
        for (const auto& r : s.refs) use(r);
        init(s.target, s.span);
        break;
      case K::InplaceXor:
      case K::InplaceAdd:
      case K::Amplitude:
        use(*s.lhs);
        for (const auto& r : s.refs) use(r);
        break;
      case K::Phase:
        for (const auto& r : s.refs) use(r);
        break;
      case K::Gate:
        for (const auto& r : s.qubits) use(r);
        break;
      case K::Control: {
        if (s.lhs) use(*s.lhs);
        for (const auto& r : s.refs) use(r);
        auto before = live_;
        block(s.body);
        no_net_init(before, "a control block", s.span);
        break;
      }
      case K::Invert:
      case K::Power: {
        auto before = live_;
        block(s.body);
        no_net_init(before, s.kind == K::Invert ? "an invert block" : "a power block", s.span);
        break;
      }
      case K::WithinApply: {
        auto before = live_;
        block(s.body);
        std::set<VarId> created;
        for (VarId v : live_)
          if (!before.count(v)) created.insert(v);
        block(s.apply);
        for (VarId v : created) live_.erase(v);
        break;
      }
      case K::Scope:
        scope(s);
        break;
    }
  }

  void scope(const TStmt& s) {
    for (const auto& r : s.inputs) use(r);
    for (VarId o : s.outputs)
      if (live_.count(o))
        diags_.error("output argument '" + name(o) + "' of '" + s.function + "' is already initialized", s.span,
                     "pass a declared but uninitialized variable");
    block(s.body);
    for (VarId o : s.outputs)
      if (!live_.count(o))
        diags_.error("output '" + name(o) + "' is not initialized by '" + s.function + "'", s.span);
    if (s.is_main) return;
    for (VarId l : s.locals)
      if (live_.count(l))
        diags_.warning("local '" + name(l) + "' of '" + s.function + "' is still initialized when the function returns",
                       p_.var(l).span, "its qubits stay allocated; compute it inside a within block to release them");
  }
};

void collect_created(const std::vector<TStmt>& body, std::set<VarId>& out) {
  for (const auto& s : body) {
    if (s.kind == TStmt::Kind::Allocate || s.kind == TStmt::Kind::Assign) out.insert(s.target);
    for (VarId o : s.outputs) out.insert(o);
    collect_created(s.body, out);
    collect_created(s.apply, out);
  }
}

void scan_apply(const std::vector<TStmt>& body, const std::set<VarId>& created, DiagnosticList& diags) {
  for (const auto& s : body) {
    if ((s.kind == TStmt::Kind::InplaceXor || s.kind == TStmt::Kind::InplaceAdd) && created.count(s.lhs->var))
      diags.warning("'" + s.lhs->text + "' is computed in the within block and modified in the apply block", s.span,
                    "uncomputation will not restore it to zero");
    scan_apply(s.body, created, diags);
    scan_apply(s.apply, created, diags);
  }
}

void within_apply(const std::vector<TStmt>& body, DiagnosticList& diags) {
  for (const auto& s : body) {
    if (s.kind == TStmt::Kind::WithinApply) {
      std::set<VarId> created;
      collect_created(s.body, created);
      scan_apply(s.apply, created, diags);
    }
    within_apply(s.body, diags);
    within_apply(s.apply, diags);
  }
}

}  // namespace

DiagnosticList check_init_flow(const TypedProgram& program) { return InitFlow(program).run(); }

DiagnosticList check_within_apply(const TypedProgram& program) {
  DiagnosticList d;
  within_apply(program.body, d);
  return d;
}

}  // namespace qmod::sema
