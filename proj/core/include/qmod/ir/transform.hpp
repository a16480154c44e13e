#pragma once

#include <vector>

#include "qmod/ir/circuit.hpp"
#include "qmod/ir/pool.hpp"

namespace qmod::ir {

class OverlappingControl : public Error {
 public:
  explicit OverlappingControl(const std::string& m) : Error("OverlappingControl", m) {}
};

/// Reverses the events, inverts each gate and swaps alloc/release.
std::vector<Event> adjoint(const std::vector<Event>& events);
Circuit adjoint(const Circuit& c);

/// Adds `ctrl` as a control of every gate; alloc/release events are kept.
std::vector<Event> controlled(const std::vector<Event>& events, QubitId ctrl);
Circuit controlled(const Circuit& c, QubitId ctrl);

std::vector<Event> power(const std::vector<Event>& events, int k);
Circuit power(const Circuit& c, int k);

/// Rewrites MCX/MCP with three or more qubits into CCX ladders over clean
/// ancillae taken from a pool that replays the circuit's own allocations.
Circuit decompose_multicontrol(const Circuit& c, bool recycle = true);

}  // namespace qmod::ir
