#pragma once

#include <map>
#include <string>

#include "qmod/ir/circuit.hpp"

namespace qmod::ir {

struct ResourceReport {
  std::map<std::string, std::size_t> gate_counts;
  std::size_t total_gates = 0;
  /// Two-qubit cost with CX=1, CP=2, SWAP=3, CCX=6 (MCX/MCP by ladder size).
  std::size_t cx_equivalent = 0;
  /// Greedy layering: each gate sits one layer above the latest of its qubits.
  std::size_t depth = 0;
  std::size_t width = 0;
  std::size_t allocations = 0;
  std::size_t allocated_qubits = 0;
  std::size_t released_qubits = 0;

  std::string to_string() const;
};

ResourceReport resource_report(const Circuit& c);

}  // namespace qmod::ir
