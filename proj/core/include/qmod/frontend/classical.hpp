#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "qmod/common/rational.hpp"
#include "qmod/frontend/ast.hpp"

namespace qmod::frontend {

class EvalError : public Error {
 public:
  EvalError(const std::string& message, SourceSpan span) : Error("EvalError", message, span) {}
};

/// Compile-time classical value: an exact scalar or a fixed-length array.
struct ClassicalValue {
  std::variant<Rational, std::vector<ClassicalValue>> value;

  ClassicalValue() : value(Rational(0)) {}
  ClassicalValue(Rational r) : value(std::move(r)) {}  // NOLINT(implicit)
  ClassicalValue(std::vector<ClassicalValue> elems) : value(std::move(elems)) {}  // NOLINT

  bool is_array() const { return std::holds_alternative<std::vector<ClassicalValue>>(value); }
  const Rational& scalar() const { return std::get<Rational>(value); }
  const std::vector<ClassicalValue>& elements() const {
    return std::get<std::vector<ClassicalValue>>(value);
  }
  std::string to_string() const;
};

/// Name lookup for classical evaluation. Quantum attributes (`x.size`,
/// `arr.len`) are answered through quantum_attribute().
class ClassicalEnv {
 public:
  virtual ~ClassicalEnv() = default;
  virtual const ClassicalValue* lookup(const std::string& name) const = 0;
  /// `path` ends at the attribute holder; nullopt when `path` is not quantum.
  virtual std::optional<Rational> quantum_attribute(const Path& path, std::size_t elem_count,
                                                    const std::string& attr) const;
  virtual bool is_quantum(const std::string& name) const;
};

class MapEnv : public ClassicalEnv {
 public:
  MapEnv() = default;
  explicit MapEnv(const ClassicalEnv* parent) : parent_(parent) {}

  void bind(const std::string& name, ClassicalValue v) { values_[name] = std::move(v); }
  const ClassicalValue* lookup(const std::string& name) const override;
  std::optional<Rational> quantum_attribute(const Path& path, std::size_t elem_count,
                                            const std::string& attr) const override;
  bool is_quantum(const std::string& name) const override;

 private:
  const ClassicalEnv* parent_ = nullptr;
  std::unordered_map<std::string, ClassicalValue> values_;
};

/// Exact evaluation of a classical expression. `pi` and the math builtins
/// (log2, sqrt, sin, cos, tan, tanh, exp, floor, ceil, abs) go through
/// double precision unless the result is exact (log2 of a power of two,
/// floor/ceil/abs).
Rational eval_classical(const Expr& expr, const ClassicalEnv& env);

/// Like eval_classical but allows array-valued results (whole-array paths).
ClassicalValue eval_classical_value(const Expr& expr, const ClassicalEnv& env);

/// Evaluates and requires an integer result.
std::int64_t eval_int(const Expr& expr, const ClassicalEnv& env, const std::string& what);

/// True if the expression mentions no quantum variable (per env.is_quantum)
/// other than through `.size` / `.len` attributes.
bool is_classical(const Expr& expr, const ClassicalEnv& env);

}  // namespace qmod::frontend
