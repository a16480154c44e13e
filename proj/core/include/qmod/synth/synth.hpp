#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmod/ir/circuit.hpp"
#include "qmod/sema/typed_program.hpp"
#include "qmod/types/interval.hpp"

namespace qmod::synth {

class SynthError : public Error {
 public:
  SynthError(const std::string& kind, const std::string& m, SourceSpan s = {}) : Error(kind, m, s) {}
};

struct SynthOptions {
  /// Hand released qubits out again (LIFO) before fresh ones.
  bool recycle = true;
  /// Hygiene markers after every top-level statement of main.
  bool markers = true;
};

struct SynthResult {
  ir::Circuit circuit;
  /// Final qubits (LSB-first) of every variable still initialized at the end.
  std::map<sema::VarId, std::vector<ir::QubitId>> registers;
};

/// Lowers an analyzed program to a circuit over the full gate set (MCX/MCP
/// included; see ir::decompose_multicontrol).
SynthResult synthesize(const sema::TypedProgram& program, const SynthOptions& options = {});

/// Monomials over qubit sets (sorted ids) with exact coefficients; the empty
/// set holds the constant term.
using PhasePolynomial = std::map<std::vector<ir::QubitId>, Rational>;

/// Bit expansion of a polynomial expression. `refs[i]` gives the qubits and
/// numeric format of the expression's i-th quantum operand.
struct PolyOperand {
  std::vector<ir::QubitId> qubits;
  types::FixedPointFormat format;
};
PhasePolynomial expr_to_phase_polynomial(const types::NumExpr& expr, const std::vector<PolyOperand>& refs);

/// P/CP/MCP gates realizing e^{i theta p(v)} up to the global phase of the
/// constant term.
std::vector<ir::Gate> phase_gates(const PhasePolynomial& poly, double theta);

}  // namespace qmod::synth
