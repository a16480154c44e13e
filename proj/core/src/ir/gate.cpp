#include "qmod/ir/gate.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qmod::ir {

const char* to_string(GateKind k) {
  switch (k) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::S: return "s";
    case GateKind::T: return "t";
    case GateKind::Sdg: return "sdg";
    case GateKind::Tdg: return "tdg";
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::P: return "p";
    case GateKind::CX: return "cx";
    case GateKind::CCX: return "ccx";
    case GateKind::CP: return "cp";
    case GateKind::SWAP: return "swap";
    case GateKind::MCX: return "mcx";
    case GateKind::MCP: return "mcp";
  }
  return "?";
}

bool is_parametric(GateKind k) {
  return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ || k == GateKind::P || k == GateKind::CP ||
         k == GateKind::MCP;
}

bool is_diagonal(GateKind k) {
  switch (k) {
    case GateKind::Z:
    case GateKind::S:
    case GateKind::T:
    case GateKind::Sdg:
    case GateKind::Tdg:
    case GateKind::RZ:
    case GateKind::P:
    case GateKind::CP:
    case GateKind::MCP:
      return true;
    default:
      return false;
  }
}

Gate Gate::mcx(const std::vector<QubitId>& controls, QubitId target) {
  Gate g;
  g.qubits = controls;
  g.qubits.push_back(target);
  switch (controls.size()) {
    case 0: g.kind = GateKind::X; break;
    case 1: g.kind = GateKind::CX; break;
    case 2: g.kind = GateKind::CCX; break;
    default: g.kind = GateKind::MCX; break;
  }
  return g;
}

Gate Gate::mcp(double theta, const std::vector<QubitId>& qubits) {
  if (qubits.empty()) throw std::invalid_argument("phase gate needs at least one qubit");
  Gate g;
  g.qubits = qubits;
  g.theta = theta;
  g.kind = qubits.size() == 1 ? GateKind::P : qubits.size() == 2 ? GateKind::CP : GateKind::MCP;
  return g;
}

std::size_t Gate::num_controls() const {
  switch (kind) {
    case GateKind::CX:
    case GateKind::CCX:
    case GateKind::MCX:
    case GateKind::CP:
    case GateKind::MCP:
      return qubits.size() - 1;
    default:
      return 0;
  }
}

std::string Gate::to_string() const {
  std::ostringstream os;
  os << ir::to_string(kind);
  if (is_parametric(kind)) os << "(" << theta << ")";
  for (std::size_t i = 0; i < qubits.size(); ++i) os << (i ? ", " : " ") << "q" << qubits[i];
  return os.str();
}

Gate inverse(const Gate& g) {
  Gate r = g;
  switch (g.kind) {
    case GateKind::S: r.kind = GateKind::Sdg; break;
    case GateKind::Sdg: r.kind = GateKind::S; break;
    case GateKind::T: r.kind = GateKind::Tdg; break;
    case GateKind::Tdg: r.kind = GateKind::T; break;
    default:
      if (is_parametric(g.kind)) r.theta = -g.theta;
      break;
  }
  return r;
}

namespace {

double phase_of(GateKind k) {
  using std::numbers::pi;
  switch (k) {
    case GateKind::Z: return pi;
    case GateKind::S: return pi / 2;
    case GateKind::Sdg: return -pi / 2;
    case GateKind::T: return pi / 4;
    case GateKind::Tdg: return -pi / 4;
    default: return 0;
  }
}

std::vector<QubitId> join(const std::vector<QubitId>& a, const std::vector<QubitId>& b) {
  std::vector<QubitId> r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

}  // namespace

std::vector<Gate> add_controls(const Gate& g, const std::vector<QubitId>& controls) {
  if (controls.empty()) return {g};
  for (QubitId c : controls)
    if (std::find(g.qubits.begin(), g.qubits.end(), c) != g.qubits.end())
      throw std::invalid_argument("control qubit q" + std::to_string(c) + " is an operand of " + g.to_string());

  const QubitId t = g.qubits.back();
  using std::numbers::pi;
  switch (g.kind) {
    case GateKind::X:
    case GateKind::CX:
    case GateKind::CCX:
    case GateKind::MCX: {
      std::vector<QubitId> cs(g.qubits.begin(), g.qubits.end() - 1);
      return {Gate::mcx(join(controls, cs), t)};
    }
    case GateKind::Z:
    case GateKind::S:
    case GateKind::Sdg:
    case GateKind::T:
    case GateKind::Tdg:
      return {Gate::mcp(phase_of(g.kind), join(controls, {t}))};
    case GateKind::P:
    case GateKind::CP:
    case GateKind::MCP:
      return {Gate::mcp(g.theta, join(controls, g.qubits))};
    case GateKind::H:
      return {Gate::one(GateKind::RY, t, pi / 4), Gate::mcx(controls, t), Gate::one(GateKind::RY, t, -pi / 4)};
    case GateKind::RY:
    case GateKind::RZ:
      return {Gate::one(g.kind, t, g.theta / 2), Gate::mcx(controls, t), Gate::one(g.kind, t, -g.theta / 2),
              Gate::mcx(controls, t)};
    case GateKind::RX: {
      std::vector<Gate> out{Gate::one(GateKind::H, t)};
      for (auto& x : add_controls(Gate::one(GateKind::RZ, t, g.theta), controls)) out.push_back(x);
      out.push_back(Gate::one(GateKind::H, t));
      return out;
    }
    case GateKind::Y:
      return {Gate::one(GateKind::Sdg, t), Gate::mcx(controls, t), Gate::one(GateKind::S, t)};
    case GateKind::SWAP: {
      QubitId a = g.qubits[0], b = g.qubits[1];
      return {Gate::cx(b, a), Gate::mcx(join(controls, {a}), b), Gate::cx(b, a)};
    }
  }
  return {g};
}

}  // namespace qmod::ir
