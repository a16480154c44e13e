#pragma once

#include <string>

#include "qmod/ir/circuit.hpp"

namespace qmod::ir {

class UnsupportedGate : public Error {
 public:
  explicit UnsupportedGate(const std::string& m) : Error("UnsupportedGate", m) {}
};

/// Shortest round-trip decimal form of an angle.
std::string format_angle(double theta);

/// OpenQASM 3 text over a single `q` register. Output registers are listed as
/// comments. Throws UnsupportedGate if MCX/MCP remain.
std::string emit_qasm3(const Circuit& c);

}  // namespace qmod::ir
