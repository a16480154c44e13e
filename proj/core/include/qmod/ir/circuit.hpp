#pragma once

#include <string>
#include <vector>

#include "qmod/common/source.hpp"
#include "qmod/ir/gate.hpp"
#include "qmod/types/qtype.hpp"

namespace qmod::ir {

class InvalidCircuit : public Error {
 public:
  explicit InvalidCircuit(const std::string& m, SourceSpan s = {}) : Error("InvalidCircuit", m, s) {}
};

struct Event {
  enum class Kind { Gate, Alloc, Release, Marker };

  Kind kind = Kind::Gate;
  Gate gate;
  /// Alloc/Release: the ids. Marker: the qubits allowed to be non-zero.
  std::vector<QubitId> ids;
  std::string label;
  SourceSpan span;

  static Event make_gate(Gate g, SourceSpan span = {});
  static Event alloc(std::vector<QubitId> ids, SourceSpan span = {});
  static Event release(std::vector<QubitId> ids, SourceSpan span = {});
  static Event marker(std::string label, std::vector<QubitId> bound, SourceSpan span = {});

  bool is_gate() const { return kind == Kind::Gate; }
  friend bool operator==(const Event&, const Event&) = default;
};

/// A named result of the program: the qubits (LSB-first) and their layout.
struct OutputRegister {
  std::string name;
  std::vector<QubitId> qubits;
  types::QType type;
};

struct Circuit {
  std::vector<Event> events;
  std::vector<OutputRegister> outputs;

  void add(Gate g, SourceSpan span = {}) { events.push_back(Event::make_gate(std::move(g), span)); }
  void append(const std::vector<Event>& more) { events.insert(events.end(), more.begin(), more.end()); }

  /// One past the largest id used by any event.
  std::size_t num_qubits() const;
  /// Peak number of simultaneously live qubits.
  std::size_t width() const;
  std::size_t gate_count() const;
};

/// Liveness and balance problems, empty when the circuit is well-formed.
/// Qubits still live at the end are allowed (program outputs).
std::vector<std::string> validate(const Circuit& c);
void validate_or_throw(const Circuit& c);

}  // namespace qmod::ir
