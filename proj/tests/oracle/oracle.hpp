#pragma once

// Classical reference models used by the tests. Nothing here calls into the
// library under test except to read plain data (ir::Gate).

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qmod/ir/gate.hpp"

namespace oracle {

using Q = boost::multiprecision::cpp_rational;
using Z = boost::multiprecision::cpp_int;

Z floor_int(const Q& v);
/// Largest multiple of 2^-d not above v.
Q floor_to(const Q& v, int d);
/// Nearest multiple of 2^-d, ties up.
Q round_to(const Q& v, int d);
Q pow2(int k);
Q exact(double d);
double to_double(const Q& v);

struct Format {
  int size = 1;
  bool is_signed = false;
  int frac = 0;
};

/// Value of register code `code` (bit i = qubit i).
Q decode(std::uint64_t code, const Format& f);
/// floor to f's grid, then two's complement wrap into f's range.
Q fit(const Q& v, const Format& f);
std::vector<Q> domain(const Format& f);

// ---- corpus programs --------------------------------------------------------

/// Truncated Taylor sum x - x^3/3 + 2x^5/15: constants rounded to `mp`
/// digits, every product floored to `mp` digits.
Q tanh_taylor(const Q& x, int mp);

/// Endpoint line through f on each of `segs` uniform pieces of [0, 1).
std::pair<std::vector<double>, std::vector<double>> endpoint_lines(const std::function<double(double)>& f,
                                                                   int segs);

/// floor_{out}(floor_mp(a_i x) + b_i) with a_i, b_i rounded to `mp` digits,
/// i = floor(x * segs).
Q piecewise(const Q& x, const std::vector<double>& a, const std::vector<double>& b, int mp, const Format& out);

/// max |L_i(x) - f(x)| over a fine grid of every segment.
double interpolation_error(const std::function<double(double)>& f, const std::vector<double>& a,
                           const std::vector<double>& b, int samples = 4000);

/// Knapsack cost phase in [0, 2pi): -gamma(3a+5b) when 2a+3b <= 12, else 0.
double knapsack_phase(int a, int b, double gamma);

/// arg wrapped into [0, 2pi).
double wrap(double phase);
/// Distance on the circle.
double phase_gap(double a, double b);

// ---- random expressions ----------------------------------------------------

struct Var {
  std::string name;
  Format format;
};

struct Expr {
  enum class Op { Const, Var, Add, Sub, Mul, Neg, Lt, Le, Gt, Ge, Eq, Ne, And, Or, Xor, LAnd, LOr, LNot };
  Op op = Op::Const;
  Q value;
  std::string var;
  std::vector<std::shared_ptr<Expr>> kids;

  bool is_boolean() const;
};
using ExprPtr = std::shared_ptr<Expr>;

/// Fully parenthesized source text.
std::string source(const Expr& e);
Q eval(const Expr& e, const std::map<std::string, Q>& env);

/// Random arithmetic/relational/logical tree over `vars` with dyadic
/// constants of at most `const_frac` fraction digits.
ExprPtr random_expr(std::mt19937_64& rng, const std::vector<Var>& vars, int depth, int const_frac = 2);

/// Exact interval of e over every assignment (brute force).
std::pair<Q, Q> brute_range(const Expr& e, const std::vector<Var>& vars);

/// Calls fn for every assignment of the variables.
void for_each_assignment(const std::vector<Var>& vars, const std::function<void(const std::map<std::string, Q>&,
                                                                               const std::vector<std::uint64_t>&)>& fn);

// ---- dense reference simulator ---------------------------------------------

/// Plain 2^n amplitude vector; qubit q is bit q of the index.
class Dense {
 public:
  explicit Dense(int n);
  void apply(const qmod::ir::Gate& g);
  void set_basis(std::uint64_t index);
  std::complex<double> operator[](std::uint64_t i) const { return amp_[i]; }
  std::size_t size() const { return amp_.size(); }
  const std::vector<std::complex<double>>& amplitudes() const { return amp_; }

 private:
  int n_;
  std::vector<std::complex<double>> amp_;
  void one(int q, const std::complex<double> m[2][2], std::uint64_t ctrl_mask);
};

/// |<a|b>|^2 for normalized vectors.
double fidelity(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b);

/// Random gate over qubits [0, n) drawn from the whole gate set.
qmod::ir::Gate random_gate(std::mt19937_64& rng, int n);

}  // namespace oracle
