#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qmod/common/rational.hpp"
#include "qmod/common/source.hpp"
#include "qmod/frontend/ast.hpp"
#include "qmod/types/fixed_point.hpp"

namespace qmod::types {

class UnknownVariable : public Error {
 public:
  UnknownVariable(const std::string& m, SourceSpan s) : Error("UnknownVariable", m, s) {}
};

class UnsupportedOperator : public Error {
 public:
  UnsupportedOperator(const std::string& m, SourceSpan s, std::string hint = {})
      : Error("UnsupportedOperator", m, s), hint_(std::move(hint)) {}
  const std::string& hint() const { return hint_; }

 private:
  std::string hint_;
};

struct NumExpr;
using NumExprPtr = std::shared_ptr<const NumExpr>;

/// Numeric expression over quantum variables and classical constants, the
/// input of interval inference and of every synthesis mode.
struct NumExpr {
  enum class Kind { Const, ClassicalVar, QuantumVar, Unary, Binary };

  Kind kind = Kind::Const;
  Rational value;
  std::string name;
  /// QuantumVar: index into the owner's reference table (-1 when unused).
  int ref = -1;
  frontend::UnaryOp unary_op = frontend::UnaryOp::Neg;
  frontend::BinaryOp binary_op = frontend::BinaryOp::Add;
  std::vector<NumExprPtr> operands;
  SourceSpan span;

  static NumExprPtr constant(Rational v, SourceSpan span = {});
  static NumExprPtr quantum(std::string name, int ref = -1, SourceSpan span = {});
  static NumExprPtr classical(std::string name, SourceSpan span = {});
  static NumExprPtr unary(frontend::UnaryOp op, NumExprPtr a, SourceSpan span = {});
  static NumExprPtr binary(frontend::BinaryOp op, NumExprPtr a, NumExprPtr b, SourceSpan span = {});

  bool has_quantum() const;
};

std::string to_string(const NumExpr& e);

using FormatMap = std::map<std::string, FixedPointFormat>;
using ConstMap = std::map<std::string, Rational>;

/// Closed interval of reachable values, all multiples of 2^-frac.
struct NumInterval {
  Rational lo;
  Rational hi;
  int frac = 0;

  std::string to_string() const;
  friend bool operator==(const NumInterval&, const NumInterval&) = default;
};

NumInterval interval_of(const FixedPointFormat& fmt);

/// Tightest format holding every value of `iv` rounded down to
/// min(iv.frac, machine_precision) fraction digits.
FixedPointFormat infer_format(const NumInterval& iv, std::optional<int> machine_precision = std::nullopt);

/// Bit routing that maps a source register onto a target format: drop low
/// bits, pad zeros below, sign- or zero-extend above, wrap above the target MSB.
struct AlignmentPlan {
  int drop_low = 0;
  int pad_low = 0;
  int extend_high = 0;
  bool sign_extend = false;
  FixedPointFormat source;
  FixedPointFormat target;

  /// For each target bit, the source bit feeding it (nullopt = constant 0).
  std::vector<std::optional<int>> routing() const;
  /// Value semantics of the plan: floor to the target grid, then wrap.
  Rational apply(const Rational& value) const;
};

AlignmentPlan plan_alignment(const FixedPointFormat& src, const FixedPointFormat& dst);

/// Floors to `frac` digits and wraps into the range of `fmt` (two's complement).
Rational align_value(const Rational& value, const FixedPointFormat& fmt);

// ---- expression planning ----------------------------------------------------

enum class PlanOp {
  Const,
  Var,
  Add,
  Sub,
  Mul,
  Neg,
  Scale,
  Lt,
  Le,
  Gt,
  Ge,
  Eq,
  Ne,
  BitAnd,
  BitOr,
  BitXor,
  BitNot,
  LogAnd,
  LogOr,
  LogNot,
};

const char* to_string(PlanOp op);
bool is_arithmetic(PlanOp op);
bool is_comparison(PlanOp op);

/// One node of a planned expression. `exact` is the interval of the full
/// precision result; `value`/`format` describe what the node hands to its
/// parent after truncation to the precision bound.
struct PlanNode {
  PlanOp op = PlanOp::Const;
  Rational constant;
  std::string var;
  int ref = -1;
  int scale = 0;
  NumInterval exact;
  NumInterval value;
  FixedPointFormat exact_format;
  FixedPointFormat format;
  bool truncated = false;
  SourceSpan span;
  std::vector<PlanNode> children;

  bool is_const() const { return op == PlanOp::Const; }
  bool is_var() const { return op == PlanOp::Var; }
};

struct PlanOptions {
  /// nullopt means exact arithmetic (no truncation, constants must be dyadic).
  std::optional<int> machine_precision;
  /// Fraction digits the consumer of the root needs (target format).
  std::optional<int> needed_fraction_digits;
};

struct ExprPlan {
  PlanNode root;
  std::vector<Diagnostic> warnings;
};

/// Folds classical subtrees, snaps constants to the precision grid, expands
/// `**` into multiplication chains and assigns intervals/formats per node.
ExprPlan plan_expression(const NumExpr& expr, const FormatMap& vars, const ConstMap& consts,
                         const PlanOptions& options);

/// Sound interval of `expr` under exact fixed-point arithmetic.
NumInterval infer_interval(const NumExpr& expr, const FormatMap& vars, const ConstMap& consts = {});

/// Nearest multiple of 2^-precision (identity when already on the grid).
Rational snap_constant(const Rational& c, int precision);

std::string to_string(const PlanNode& node);

}  // namespace qmod::types
