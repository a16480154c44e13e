#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmod/common/source.hpp"
#include "qmod/ir/gate.hpp"
#include "qmod/sema/type_pattern.hpp"
#include "qmod/types/interval.hpp"

namespace qmod::sema {

using VarId = int;

/// A quantum variable of the elaborated program. Function parameters are not
/// variables of their own: they alias the caller's objects.
struct Var {
  std::string name;
  TypePattern declared;
  /// Known once declared concretely or initialized.
  std::optional<types::QType> type;
  SourceSpan span;
  /// Function that declared the variable ("main" for main's outputs).
  std::string owner;
};

/// A contiguous qubit range of a variable seen through a concrete type.
struct TRef {
  VarId var = -1;
  int offset = 0;
  int size = 0;
  types::QType view;
  std::string text;
  SourceSpan span;

  bool overlaps(const TRef& o) const {
    return var == o.var && offset < o.offset + o.size && o.offset < offset + size;
  }
};

struct TStmt {
  enum class Kind {
    Allocate,
    Assign,
    InplaceXor,
    InplaceAdd,
    Gate,
    Phase,
    Amplitude,
    Control,
    WithinApply,
    Invert,
    Power,
    Scope,
  };

  Kind kind = Kind::Gate;
  SourceSpan span;

  // Allocate / Assign: the variable being initialized and its new type.
  VarId target = -1;
  types::QType type;
  // Assign: numeric format of the target as seen by the statement.
  types::FixedPointFormat format;

  // InplaceXor / InplaceAdd target; Amplitude indicator; Control qubits.
  std::optional<TRef> lhs;

  // Quantum expression; QuantumVar nodes index `refs`.
  types::NumExprPtr expr;
  std::vector<TRef> refs;

  // Gate
  ir::GateKind gate = ir::GateKind::X;
  std::vector<TRef> qubits;
  // Gate angle or Phase coefficient.
  double theta = 0.0;

  // Power
  int exponent = 1;

  // Control / Invert / Power / Scope body; WithinApply compute block.
  std::vector<TStmt> body;
  // WithinApply action block.
  std::vector<TStmt> apply;

  // Scope (an inlined function call)
  std::string function;
  bool is_main = false;
  std::vector<VarId> outputs;
  std::vector<TRef> inputs;
  std::vector<VarId> locals;

  bool control_on_expr() const { return kind == Kind::Control && static_cast<bool>(expr); }
};

struct TypedProgram {
  std::vector<Var> vars;
  std::vector<VarId> outputs;
  /// Body of main, wrapped in a single Scope statement.
  std::vector<TStmt> body;
  int machine_precision = 8;

  const Var& var(VarId id) const { return vars.at(static_cast<std::size_t>(id)); }
};

/// Indented, human-readable listing (for tests and `--dump`).
std::string dump(const TypedProgram& p);

/// Plans the expression of an Assign/InplaceXor/InplaceAdd/Phase/Amplitude/
/// Control statement with the program's precision rules.
types::ExprPlan plan_statement_expr(const TStmt& s, int machine_precision,
                                    std::optional<int> needed_fraction_digits);
types::FormatMap ref_formats(const TStmt& s);

}  // namespace qmod::sema
