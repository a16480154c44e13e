#include "qmod/ir/qasm.hpp"

#include <array>
#include <charconv>
#include <sstream>

namespace qmod::ir {

std::string format_angle(double theta) {
  if (theta == 0.0) return "0";
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), theta);
  return std::string(buf.data(), res.ptr);
}

std::string emit_qasm3(const Circuit& c) {
  std::ostringstream os;
  os << "OPENQASM 3.0;\ninclude \"stdgates.inc\";\n";
  for (const auto& out : c.outputs) {
    os << "// output " << out.name << ": " << out.type.to_string() << " ->";
    for (QubitId q : out.qubits) os << " q[" << q << "]";
    os << "\n";
  }
  std::size_t n = c.num_qubits();
  if (n > 0) os << "qubit[" << n << "] q;\n";
  for (const Event& e : c.events) {
    if (!e.is_gate()) continue;
    const Gate& g = e.gate;
    if (g.kind == GateKind::MCX || g.kind == GateKind::MCP)
      throw UnsupportedGate("gate '" + g.to_string() + "' must be decomposed before emission");
    os << to_string(g.kind);
    if (is_parametric(g.kind)) os << "(" << format_angle(g.theta) << ")";
    for (std::size_t i = 0; i < g.qubits.size(); ++i) os << (i ? ", " : " ") << "q[" << g.qubits[i] << "]";
    os << ";\n";
  }
  return os.str();
}

}  // namespace qmod::ir
