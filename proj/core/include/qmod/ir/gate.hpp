#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qmod::ir {

using QubitId = std::uint32_t;

enum class GateKind { H, X, Y, Z, S, T, Sdg, Tdg, RX, RY, RZ, P, CX, CCX, CP, SWAP, MCX, MCP };

const char* to_string(GateKind k);
bool is_parametric(GateKind k);
/// Gates that only multiply amplitudes by phases.
bool is_diagonal(GateKind k);

/// Operands: controls first, target last (CX, CCX, MCX, CP). For CP and MCP
/// the phase is symmetric in all operands.
struct Gate {
  GateKind kind = GateKind::X;
  std::vector<QubitId> qubits;
  double theta = 0.0;

  static Gate one(GateKind k, QubitId q, double theta = 0.0) { return {k, {q}, theta}; }
  static Gate cx(QubitId c, QubitId t) { return {GateKind::CX, {c, t}, 0.0}; }
  static Gate ccx(QubitId a, QubitId b, QubitId t) { return {GateKind::CCX, {a, b, t}, 0.0}; }
  /// X on `target` controlled by all of `controls` (picks X/CX/CCX/MCX).
  static Gate mcx(const std::vector<QubitId>& controls, QubitId target);
  /// Phase e^{i theta} on the all-ones subspace of `qubits` (picks P/CP/MCP).
  static Gate mcp(double theta, const std::vector<QubitId>& qubits);

  std::size_t num_controls() const;
  std::string to_string() const;
  friend bool operator==(const Gate&, const Gate&) = default;
};

Gate inverse(const Gate& g);

/// Gate sequence implementing `g` controlled on every qubit of `controls`
/// (all controls must be distinct from g's operands).
std::vector<Gate> add_controls(const Gate& g, const std::vector<QubitId>& controls);

}  // namespace qmod::ir
