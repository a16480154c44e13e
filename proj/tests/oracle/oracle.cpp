#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace oracle {

using qmod::ir::Gate;
using qmod::ir::GateKind;

Z floor_int(const Q& v) {
  Z n = boost::multiprecision::numerator(v), d = boost::multiprecision::denominator(v);
  Z q = n / d;
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}

Q pow2(int k) {
  Q r = 1;
  for (int i = 0; i < std::abs(k); ++i) r *= 2;
  return k >= 0 ? r : Q(1) / r;
}

Q floor_to(const Q& v, int d) { return Q(floor_int(v * pow2(d))) * pow2(-d); }

Q round_to(const Q& v, int d) { return Q(floor_int(v * pow2(d) + Q(1, 2))) * pow2(-d); }

Q exact(double d) {
  int e = 0;
  double m = std::frexp(d, &e);
  auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  return Q(mant) * pow2(e - 53);
}

double to_double(const Q& v) { return static_cast<double>(v); }

Q decode(std::uint64_t code, const Format& f) {
  Z c = code;
  if (f.is_signed && (code >> (f.size - 1)) & 1u) c -= Z(1) << f.size;
  return Q(c) * pow2(-f.frac);
}

Q fit(const Q& v, const Format& f) {
  Z k = floor_int(v * pow2(f.frac));
  Z m = Z(1) << f.size;
  k %= m;
  if (k < 0) k += m;
  if (f.is_signed && k >= m / 2) k -= m;
  return Q(k) * pow2(-f.frac);
}

std::vector<Q> domain(const Format& f) {
  std::vector<Q> out;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << f.size); ++c) out.push_back(decode(c, f));
  std::sort(out.begin(), out.end());
  return out;
}

Q tanh_taylor(const Q& x, int mp) {
  auto mul = [&](const Q& a, const Q& b) { return floor_to(a * b, mp); };
  Q x2 = mul(x, x), x3 = mul(x2, x), x4 = mul(x3, x), x5 = mul(x4, x);
  return x - mul(round_to(Q(1, 3), mp), x3) + mul(round_to(Q(2, 15), mp), x5);
}

std::pair<std::vector<double>, std::vector<double>> endpoint_lines(const std::function<double(double)>& f,
                                                                   int segs) {
  std::vector<double> a, b;
  for (int i = 0; i < segs; ++i) {
    double lo = static_cast<double>(i) / segs, hi = static_cast<double>(i + 1) / segs;
    double slope = (f(hi) - f(lo)) / (hi - lo);
    a.push_back(slope);
    b.push_back(f(lo) - slope * lo);
  }
  return {a, b};
}

Q piecewise(const Q& x, const std::vector<double>& a, const std::vector<double>& b, int mp, const Format& out) {
  auto segs = static_cast<int>(a.size());
  auto i = static_cast<std::size_t>(floor_int(x * segs));
  Q ai = round_to(exact(a[i]), mp), bi = round_to(exact(b[i]), mp);
  return fit(floor_to(ai * x, mp) + bi, out);
}

double interpolation_error(const std::function<double(double)>& f, const std::vector<double>& a,
                           const std::vector<double>& b, int samples) {
  double worst = 0;
  auto segs = static_cast<int>(a.size());
  for (int i = 0; i < segs; ++i)
    for (int j = 0; j <= samples; ++j) {
      double x = (i + static_cast<double>(j) / samples) / segs;
      worst = std::max(worst, std::abs(a[static_cast<std::size_t>(i)] * x + b[static_cast<std::size_t>(i)] - f(x)));
    }
  return worst;
}

double wrap(double phase) {
  double r = std::fmod(phase, 2 * M_PI);
  if (r < 0) r += 2 * M_PI;
  return r;
}

double phase_gap(double a, double b) {
  double d = wrap(a - b);
  return std::min(d, 2 * M_PI - d);
}

double knapsack_phase(int a, int b, double gamma) { return 2 * a + 3 * b <= 12 ? wrap(-gamma * (3 * a + 5 * b)) : 0.0; }

// ---- expressions -------------------------------------------------------------

bool Expr::is_boolean() const { return op >= Op::Lt; }

namespace {

std::string decimal(const Q& v) {
  Z n = boost::multiprecision::numerator(v), d = boost::multiprecision::denominator(v);
  bool neg = n < 0;
  if (neg) n = -n;
  std::ostringstream os;
  os << (n / d);
  Z r = n % d;
  if (r != 0) {
    os << '.';
    while (r != 0) {
      r *= 10;
      os << (r / d);
      r %= d;
    }
  }
  return (neg ? "-" : "") + os.str();
}

const char* symbol(Expr::Op op) {
  switch (op) {
    case Expr::Op::Add: return "+";
    case Expr::Op::Sub: return "-";
    case Expr::Op::Mul: return "*";
    case Expr::Op::Lt: return "<";
    case Expr::Op::Le: return "<=";
    case Expr::Op::Gt: return ">";
    case Expr::Op::Ge: return ">=";
    case Expr::Op::Eq: return "==";
    case Expr::Op::Ne: return "!=";
    case Expr::Op::And: return "&";
    case Expr::Op::Or: return "|";
    case Expr::Op::Xor: return "^";
    case Expr::Op::LAnd: return "and";
    case Expr::Op::LOr: return "or";
    default: return "?";
  }
}

ExprPtr node(Expr::Op op, std::vector<ExprPtr> kids) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->kids = std::move(kids);
  return e;
}

}  // namespace

std::string source(const Expr& e) {
  switch (e.op) {
    case Expr::Op::Const: return e.value < 0 ? "(" + decimal(e.value) + ")" : decimal(e.value);
    case Expr::Op::Var: return e.var;
    case Expr::Op::Neg: return "(-" + source(*e.kids[0]) + ")";
    case Expr::Op::LNot: return "(not " + source(*e.kids[0]) + ")";
    default: return "(" + source(*e.kids[0]) + " " + symbol(e.op) + " " + source(*e.kids[1]) + ")";
  }
}

Q eval(const Expr& e, const std::map<std::string, Q>& env) {
  auto k = [&](std::size_t i) { return eval(*e.kids[i], env); };
  auto truth = [](bool b) { return Q(b ? 1 : 0); };
  switch (e.op) {
    case Expr::Op::Const: return e.value;
    case Expr::Op::Var: return env.at(e.var);
    case Expr::Op::Add: return k(0) + k(1);
    case Expr::Op::Sub: return k(0) - k(1);
    case Expr::Op::Mul: return k(0) * k(1);
    case Expr::Op::Neg: return -k(0);
    case Expr::Op::Lt: return truth(k(0) < k(1));
    case Expr::Op::Le: return truth(k(0) <= k(1));
    case Expr::Op::Gt: return truth(k(0) > k(1));
    case Expr::Op::Ge: return truth(k(0) >= k(1));
    case Expr::Op::Eq: return truth(k(0) == k(1));
    case Expr::Op::Ne: return truth(k(0) != k(1));
    case Expr::Op::And: return Q(floor_int(k(0)) & floor_int(k(1)));
    case Expr::Op::Or: return Q(floor_int(k(0)) | floor_int(k(1)));
    case Expr::Op::Xor: return Q(floor_int(k(0)) ^ floor_int(k(1)));
    case Expr::Op::LAnd: return truth(k(0) != 0 && k(1) != 0);
    case Expr::Op::LOr: return truth(k(0) != 0 || k(1) != 0);
    case Expr::Op::LNot: return truth(k(0) == 0);
  }
  return 0;
}

namespace {

ExprPtr leaf(std::mt19937_64& rng, const std::vector<Var>& vars, int const_frac) {
  std::uniform_int_distribution<int> pick(0, 9);
  if (pick(rng) < 3) {
    std::uniform_int_distribution<int> num(-8, 8), fr(0, const_frac);
    auto e = std::make_shared<Expr>();
    e->op = Expr::Op::Const;
    e->value = Q(num(rng)) * pow2(-fr(rng));
    return e;
  }
  std::uniform_int_distribution<std::size_t> v(0, vars.size() - 1);
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::Var;
  e->var = vars[v(rng)].name;
  return e;
}

ExprPtr arith(std::mt19937_64& rng, const std::vector<Var>& vars, int depth, int const_frac) {
  if (depth <= 0) return leaf(rng, vars, const_frac);
  std::uniform_int_distribution<int> pick(0, 9);
  int p = pick(rng);
  if (p < 2) return leaf(rng, vars, const_frac);
  if (p < 4) return node(Expr::Op::Add, {arith(rng, vars, depth - 1, const_frac), arith(rng, vars, depth - 1, const_frac)});
  if (p < 6) return node(Expr::Op::Sub, {arith(rng, vars, depth - 1, const_frac), arith(rng, vars, depth - 1, const_frac)});
  if (p < 9) return node(Expr::Op::Mul, {arith(rng, vars, depth - 1, const_frac), arith(rng, vars, depth - 1, const_frac)});
  return node(Expr::Op::Neg, {arith(rng, vars, depth - 1, const_frac)});
}

ExprPtr relation(std::mt19937_64& rng, const std::vector<Var>& vars, int depth, int const_frac) {
  static const Expr::Op ops[] = {Expr::Op::Lt, Expr::Op::Le, Expr::Op::Gt, Expr::Op::Ge, Expr::Op::Eq, Expr::Op::Ne};
  std::uniform_int_distribution<int> pick(0, 5);
  return node(ops[pick(rng)], {arith(rng, vars, depth - 1, const_frac), arith(rng, vars, depth - 1, const_frac)});
}

ExprPtr logic(std::mt19937_64& rng, const std::vector<Var>& vars, int depth, int const_frac) {
  static const Expr::Op ops[] = {Expr::Op::And, Expr::Op::Or, Expr::Op::Xor, Expr::Op::LAnd, Expr::Op::LOr};
  std::uniform_int_distribution<int> pick(0, 5);
  int p = pick(rng);
  if (p == 5) return node(Expr::Op::LNot, {relation(rng, vars, depth - 1, const_frac)});
  return node(ops[p], {relation(rng, vars, depth - 1, const_frac), relation(rng, vars, depth - 1, const_frac)});
}

/// Bitwise over unsigned integer variables (same meaning on every grid).
ExprPtr bitwise_ints(std::mt19937_64& rng, const std::vector<Var>& vars) {
  std::vector<const Var*> ints;
  for (const auto& v : vars)
    if (!v.format.is_signed && v.format.frac == 0) ints.push_back(&v);
  if (ints.empty()) return nullptr;
  std::uniform_int_distribution<std::size_t> v(0, ints.size() - 1);
  std::uniform_int_distribution<int> op(0, 2);
  auto a = std::make_shared<Expr>(), b = std::make_shared<Expr>();
  a->op = b->op = Expr::Op::Var;
  a->var = ints[v(rng)]->name;
  b->var = ints[v(rng)]->name;
  static const Expr::Op ops[] = {Expr::Op::And, Expr::Op::Or, Expr::Op::Xor};
  return node(ops[op(rng)], {a, b});
}

}  // namespace

ExprPtr random_expr(std::mt19937_64& rng, const std::vector<Var>& vars, int depth, int const_frac) {
  std::uniform_int_distribution<int> pick(0, 19);
  int p = pick(rng);
  if (p < 13) return arith(rng, vars, depth, const_frac);
  if (p < 16) return relation(rng, vars, depth, const_frac);
  if (p < 18) return logic(rng, vars, depth, const_frac);
  if (auto e = bitwise_ints(rng, vars)) return e;
  return arith(rng, vars, depth, const_frac);
}

void for_each_assignment(const std::vector<Var>& vars,
                         const std::function<void(const std::map<std::string, Q>&, const std::vector<std::uint64_t>&)>& fn) {
  std::vector<std::uint64_t> codes(vars.size(), 0);
  for (;;) {
    std::map<std::string, Q> env;
    for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i].name] = decode(codes[i], vars[i].format);
    fn(env, codes);
    std::size_t i = 0;
    for (; i < vars.size(); ++i) {
      if (++codes[i] < (std::uint64_t{1} << vars[i].format.size)) break;
      codes[i] = 0;
    }
    if (i == vars.size()) return;
  }
}

std::pair<Q, Q> brute_range(const Expr& e, const std::vector<Var>& vars) {
  std::optional<Q> lo, hi;
  for_each_assignment(vars, [&](const std::map<std::string, Q>& env, const std::vector<std::uint64_t>&) {
    Q v = eval(e, env);
    if (!lo || v < *lo) lo = v;
    if (!hi || v > *hi) hi = v;
  });
  return {*lo, *hi};
}

// ---- dense simulator -----------------------------------------------------------

Dense::Dense(int n) : n_(n), amp_(std::size_t{1} << n) { amp_[0] = 1; }

void Dense::set_basis(std::uint64_t index) {
  std::fill(amp_.begin(), amp_.end(), 0);
  amp_[index] = 1;
}

void Dense::one(int q, const std::complex<double> m[2][2], std::uint64_t ctrl) {
  std::uint64_t bit = std::uint64_t{1} << q;
  for (std::uint64_t i = 0; i < amp_.size(); ++i) {
    if ((i & bit) || (i & ctrl) != ctrl) continue;
    auto a0 = amp_[i], a1 = amp_[i | bit];
    amp_[i] = m[0][0] * a0 + m[0][1] * a1;
    amp_[i | bit] = m[1][0] * a0 + m[1][1] * a1;
  }
}

void Dense::apply(const Gate& g) {
  using C = std::complex<double>;
  const C I(0, 1);
  double t = g.theta;
  C m[2][2];
  auto set = [&](C a, C b, C c, C d) {
    m[0][0] = a;
    m[0][1] = b;
    m[1][0] = c;
    m[1][1] = d;
  };
  std::uint64_t ctrl = 0;
  auto q = [&](std::size_t i) { return static_cast<int>(g.qubits[i]); };
  switch (g.kind) {
    case GateKind::H: set(M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2); break;
    case GateKind::X:
    case GateKind::CX:
    case GateKind::CCX:
    case GateKind::MCX: set(0, 1, 1, 0); break;
    case GateKind::Y: set(0, -I, I, 0); break;
    case GateKind::Z: set(1, 0, 0, -1); break;
    case GateKind::S: set(1, 0, 0, I); break;
    case GateKind::Sdg: set(1, 0, 0, -I); break;
    case GateKind::T: set(1, 0, 0, std::exp(I * (M_PI / 4))); break;
    case GateKind::Tdg: set(1, 0, 0, std::exp(-I * (M_PI / 4))); break;
    case GateKind::RX: set(std::cos(t / 2), -I * std::sin(t / 2), -I * std::sin(t / 2), std::cos(t / 2)); break;
    case GateKind::RY: set(std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2)); break;
    case GateKind::RZ: set(std::exp(-I * (t / 2)), 0, 0, std::exp(I * (t / 2))); break;
    case GateKind::P:
    case GateKind::CP:
    case GateKind::MCP: set(1, 0, 0, std::exp(I * t)); break;
    case GateKind::SWAP: {
      Gate a = Gate::cx(g.qubits[0], g.qubits[1]), b = Gate::cx(g.qubits[1], g.qubits[0]);
      apply(a);
      apply(b);
      apply(a);
      return;
    }
  }
  for (std::size_t i = 0; i + 1 < g.qubits.size(); ++i) ctrl |= std::uint64_t{1} << q(i);
  one(q(g.qubits.size() - 1), m, ctrl);
}

double fidelity(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b) {
  std::complex<double> s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return std::norm(s);
}

Gate random_gate(std::mt19937_64& rng, int n) {
  static const GateKind kinds[] = {GateKind::H,  GateKind::X,  GateKind::Y,   GateKind::Z,   GateKind::S,
                                   GateKind::T,  GateKind::Sdg, GateKind::Tdg, GateKind::RX,  GateKind::RY,
                                   GateKind::RZ, GateKind::P,  GateKind::CX,  GateKind::CCX, GateKind::CP,
                                   GateKind::SWAP, GateKind::MCX, GateKind::MCP};
  std::uniform_int_distribution<std::size_t> pk(0, std::size(kinds) - 1);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  for (;;) {
    GateKind k = kinds[pk(rng)];
    std::size_t arity = 1;
    if (k == GateKind::CX || k == GateKind::CP || k == GateKind::SWAP) arity = 2;
    if (k == GateKind::CCX) arity = 3;
    if (k == GateKind::MCX || k == GateKind::MCP) arity = 4;
    if (static_cast<int>(arity) > n) continue;
    std::vector<qmod::ir::QubitId> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = static_cast<qmod::ir::QubitId>(i);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(arity);
    return Gate{k, all, qmod::ir::is_parametric(k) ? angle(rng) : 0.0};
  }
}

}  // namespace oracle
