#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qmod/common/rational.hpp"
#include "qmod/common/source.hpp"

namespace qmod::frontend {

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

enum class UnaryOp { Neg, BitNot, LogNot };

enum class BinaryOp {
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Shl,
  Shr,
  Lt,
  Le,
  Gt,
  Ge,
  Eq,
  Ne,
  BitAnd,
  BitXor,
  BitOr,
  LogAnd,
  LogOr,
};

const char* to_string(UnaryOp op);
const char* to_string(BinaryOp op);
/// Surface spelling, e.g. "+" or "and".
const char* spelling(UnaryOp op);
const char* spelling(BinaryOp op);
bool is_relational(BinaryOp op);

/// `name`, `name.field`, `name[index]` chains.
struct PathElem {
  enum class Kind { Field, Index } kind = Kind::Field;
  std::string field;
  ExprPtr index;
  SourceSpan span;
};

struct Path {
  std::string root;
  std::vector<PathElem> elems;
  SourceSpan span;
};

enum class ExprKind { Number, PathRef, Unary, Binary, Call };

struct Expr {
  ExprKind kind = ExprKind::Number;
  SourceSpan span;

  // Number
  Rational number;
  std::string number_text;
  // PathRef
  Path path;
  // Unary / Binary
  UnaryOp unary_op = UnaryOp::Neg;
  BinaryOp binary_op = BinaryOp::Add;
  std::vector<ExprPtr> operands;
  // Call (classical math builtins only)
  std::string callee;
};

ExprPtr make_number(Rational value, std::string text, SourceSpan span);
ExprPtr make_path(Path path);
ExprPtr make_unary(UnaryOp op, ExprPtr operand, SourceSpan span);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourceSpan span);
ExprPtr clone(const Expr& e);
Path clone(const Path& p);

struct QTypeExpr {
  enum class Kind { Bit, Num, Array, Named } kind = Kind::Bit;
  // Num: any subset of size / sign / fraction digits may be omitted.
  ExprPtr size;
  std::optional<bool> is_signed;
  ExprPtr fraction_digits;
  // Array
  std::unique_ptr<QTypeExpr> element;
  ExprPtr length;
  // Named record
  std::string name;
  SourceSpan span;
};

struct CTypeExpr {
  enum class Kind { Int, Real, Array } kind = Kind::Int;
  std::unique_ptr<CTypeExpr> element;
  ExprPtr length;
  SourceSpan span;
};

struct FnTypeExpr {
  std::vector<QTypeExpr> params;
  SourceSpan span;
};

struct Param {
  std::string name;
  bool is_output = false;
  std::variant<QTypeExpr, CTypeExpr, FnTypeExpr> type;
  SourceSpan span;

  bool is_quantum() const { return std::holds_alternative<QTypeExpr>(type); }
  bool is_classical() const { return std::holds_alternative<CTypeExpr>(type); }
  bool is_function() const { return std::holds_alternative<FnTypeExpr>(type); }
};

struct Stmt;
using Block = std::vector<Stmt>;

struct Lambda {
  std::vector<std::string> params;
  Block body;
  SourceSpan span;
};

struct Arg {
  std::variant<ExprPtr, std::unique_ptr<Lambda>> value;
  SourceSpan span;

  const Expr* expr() const;
  const Lambda* lambda() const;
};

struct DeclStmt {
  std::string name;
  QTypeExpr type;
};

struct AllocateStmt {
  ExprPtr size;  // optional explicit qubit count
  Path target;
};

enum class AssignOp { OutOfPlace, InplaceXor, InplaceAdd };
const char* spelling(AssignOp op);

struct AssignStmt {
  AssignOp op = AssignOp::OutOfPlace;
  Path target;
  ExprPtr value;
};

struct PhaseStmt {
  ExprPtr expr;
  ExprPtr angle;
};

struct AmplitudeStmt {
  ExprPtr expr;
  Path indicator;
};

struct ControlStmt {
  ExprPtr condition;
  Block body;
};

struct RepeatStmt {
  std::string iterator;
  ExprPtr count;
  Block body;
};

struct WithinApplyStmt {
  Block within;
  Block apply;
};

struct InvertStmt {
  Block body;
};

struct PowerStmt {
  ExprPtr exponent;
  Block body;
};

struct CallStmt {
  std::string callee;
  SourceSpan callee_span;
  std::vector<Arg> args;
};

struct Stmt {
  std::variant<DeclStmt, AllocateStmt, AssignStmt, PhaseStmt, AmplitudeStmt, ControlStmt,
               RepeatStmt, WithinApplyStmt, InvertStmt, PowerStmt, CallStmt>
      node;
  SourceSpan span;
};

struct RecordField {
  std::string name;
  QTypeExpr type;
  SourceSpan span;
};

struct RecordDef {
  std::string name;
  std::vector<RecordField> fields;
  SourceSpan span;
};

struct FuncDecl {
  std::string name;
  std::vector<Param> params;
  Block body;
  SourceSpan span;
};

struct Program {
  std::vector<RecordDef> records;
  std::vector<FuncDecl> funcs;

  const FuncDecl* find_func(const std::string& name) const;
  const RecordDef* find_record(const std::string& name) const;
};

}  // namespace qmod::frontend
