#include "qmod/ir/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qmod::ir {

Event Event::make_gate(Gate g, SourceSpan span) {
  Event e;
  e.kind = Kind::Gate;
  e.gate = std::move(g);
  e.span = span;
  return e;
}

Event Event::alloc(std::vector<QubitId> ids, SourceSpan span) {
  Event e;
  e.kind = Kind::Alloc;
  e.ids = std::move(ids);
  e.span = span;
  return e;
}

Event Event::release(std::vector<QubitId> ids, SourceSpan span) {
  Event e;
  e.kind = Kind::Release;
  e.ids = std::move(ids);
  e.span = span;
  return e;
}

Event Event::marker(std::string label, std::vector<QubitId> bound, SourceSpan span) {
  Event e;
  e.kind = Kind::Marker;
  e.label = std::move(label);
  e.ids = std::move(bound);
  e.span = span;
  return e;
}

std::size_t Circuit::num_qubits() const {
  std::size_t n = 0;
  for (const auto& e : events) {
    const auto& ids = e.is_gate() ? e.gate.qubits : e.ids;
    for (QubitId q : ids) n = std::max<std::size_t>(n, q + 1);
  }
  return n;
}

std::size_t Circuit::width() const {
  std::size_t live = 0, peak = 0;
  for (const auto& e : events) {
    if (e.kind == Event::Kind::Alloc) {
      live += e.ids.size();
      peak = std::max(peak, live);
    } else if (e.kind == Event::Kind::Release) {
      live -= std::min(live, e.ids.size());
    }
  }
  return peak;
}

std::size_t Circuit::gate_count() const {
  return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [](const Event& e) { return e.is_gate(); }));
}

std::vector<std::string> validate(const Circuit& c) {
  std::vector<std::string> problems;
  std::set<QubitId> live;
  std::set<QubitId> ever;
  for (std::size_t i = 0; i < c.events.size(); ++i) {
    const Event& e = c.events[i];
    const std::string at = "event " + std::to_string(i) + ": ";
    switch (e.kind) {
      case Event::Kind::Alloc:
        for (QubitId q : e.ids) {
          if (live.count(q)) problems.push_back(at + "q" + std::to_string(q) + " allocated while live");
          live.insert(q);
          ever.insert(q);
        }
        break;
      case Event::Kind::Release:
        for (QubitId q : e.ids) {
          if (!live.count(q))
            problems.push_back(at + "q" + std::to_string(q) +
                               (ever.count(q) ? " released twice" : " released without allocation"));
          live.erase(q);
        }
        break;
      case Event::Kind::Marker:
        for (QubitId q : e.ids)
          if (!live.count(q)) problems.push_back(at + "marker names dead q" + std::to_string(q));
        break;
      case Event::Kind::Gate: {
        const Gate& g = e.gate;
        std::set<QubitId> seen;
        for (QubitId q : g.qubits) {
          if (!live.count(q)) problems.push_back(at + g.to_string() + " uses dead q" + std::to_string(q));
          if (!seen.insert(q).second) problems.push_back(at + g.to_string() + " repeats q" + std::to_string(q));
        }
        if (!std::isfinite(g.theta)) problems.push_back(at + g.to_string() + " has a non-finite angle");
        std::size_t want = 0;
        switch (g.kind) {
          case GateKind::CX:
          case GateKind::CP:
          case GateKind::SWAP: want = 2; break;
          case GateKind::CCX: want = 3; break;
          case GateKind::MCX: want = g.qubits.size() >= 4 ? g.qubits.size() : 4; break;
          case GateKind::MCP: want = g.qubits.size() >= 3 ? g.qubits.size() : 3; break;
          default: want = 1; break;
        }
        if (g.qubits.size() != want) problems.push_back(at + g.to_string() + " has the wrong operand count");
        break;
      }
    }
  }
  return problems;
}

void validate_or_throw(const Circuit& c) {
  auto p = validate(c);
  if (!p.empty()) throw InvalidCircuit(p.front());
}

}  // namespace qmod::ir
