#include "qmod/ir/transform.hpp"

#include <algorithm>

namespace qmod::ir {

std::vector<Event> adjoint(const std::vector<Event>& events) {
  std::vector<Event> out;
  out.reserve(events.size());
  for (auto it = events.rbegin(); it != events.rend(); ++it) {
    Event e = *it;
    switch (e.kind) {
      case Event::Kind::Gate: e.gate = inverse(e.gate); break;
      case Event::Kind::Alloc: e.kind = Event::Kind::Release; break;
      case Event::Kind::Release: e.kind = Event::Kind::Alloc; break;
      case Event::Kind::Marker: break;
    }
    out.push_back(std::move(e));
  }
  return out;
}

Circuit adjoint(const Circuit& c) {
  Circuit r;
  r.events = adjoint(c.events);
  r.outputs = c.outputs;
  return r;
}

std::vector<Event> controlled(const std::vector<Event>& events, QubitId ctrl) {
  std::vector<Event> out;
  for (const Event& e : events) {
    const auto& ids = e.is_gate() ? e.gate.qubits : e.ids;
    if (e.kind != Event::Kind::Marker && std::find(ids.begin(), ids.end(), ctrl) != ids.end())
      throw OverlappingControl("control qubit q" + std::to_string(ctrl) + " is used inside the controlled block");
    if (!e.is_gate()) {
      out.push_back(e);
      continue;
    }
    for (auto& g : add_controls(e.gate, {ctrl})) out.push_back(Event::make_gate(std::move(g), e.span));
  }
  return out;
}

Circuit controlled(const Circuit& c, QubitId ctrl) {
  Circuit r;
  r.events = controlled(c.events, ctrl);
  r.outputs = c.outputs;
  return r;
}

std::vector<Event> power(const std::vector<Event>& events, int k) {
  std::vector<Event> out;
  for (int i = 0; i < k; ++i) out.insert(out.end(), events.begin(), events.end());
  return out;
}

Circuit power(const Circuit& c, int k) {
  Circuit r;
  r.events = power(c.events, k);
  r.outputs = c.outputs;
  return r;
}

namespace {

// AND of `qs` (at least two) into a ladder of fresh ancillae; returns the
// ladder gates and the qubit holding the conjunction.
QubitId and_ladder(const std::vector<QubitId>& qs, const std::vector<QubitId>& anc, std::vector<Gate>& gates) {
  gates.push_back(Gate::ccx(qs[0], qs[1], anc[0]));
  for (std::size_t i = 2; i < qs.size(); ++i) gates.push_back(Gate::ccx(qs[i], anc[i - 2], anc[i - 1]));
  return anc[qs.size() - 2];
}

void emit_ladder(std::vector<Event>& out, QubitPool& pool, const std::vector<QubitId>& controls, bool phase,
                 double theta, QubitId target, SourceSpan span) {
  // Conjunction of all but the last control, then a 2-control gate (MCX) or a
  // controlled phase (MCP) against the last operand.
  std::vector<QubitId> head(controls.begin(), controls.end() - 1);
  QubitId last = controls.back();
  auto anc = pool.alloc(static_cast<int>(head.size()) - 1);
  out.push_back(Event::alloc(anc, span));
  std::vector<Gate> ladder;
  QubitId conj = and_ladder(head, anc, ladder);
  for (const auto& g : ladder) out.push_back(Event::make_gate(g, span));
  if (phase)
    out.push_back(Event::make_gate(Gate::mcp(theta, {conj, last}), span));
  else
    out.push_back(Event::make_gate(Gate::ccx(last, conj, target), span));
  for (auto it = ladder.rbegin(); it != ladder.rend(); ++it) out.push_back(Event::make_gate(*it, span));
  pool.release(anc);
  out.push_back(Event::release(anc, span));
}

}  // namespace

Circuit decompose_multicontrol(const Circuit& c, bool recycle) {
  Circuit r;
  r.outputs = c.outputs;
  QubitPool pool(recycle);
  for (const Event& e : c.events) {
    switch (e.kind) {
      case Event::Kind::Alloc:
        for (QubitId q : e.ids) pool.claim(q);
        r.events.push_back(e);
        break;
      case Event::Kind::Release:
        pool.release(e.ids);
        r.events.push_back(e);
        break;
      case Event::Kind::Marker:
        r.events.push_back(e);
        break;
      case Event::Kind::Gate: {
        const Gate& g = e.gate;
        if (g.kind == GateKind::MCX && g.qubits.size() >= 4) {
          std::vector<QubitId> controls(g.qubits.begin(), g.qubits.end() - 1);
          emit_ladder(r.events, pool, controls, false, 0.0, g.qubits.back(), e.span);
        } else if (g.kind == GateKind::MCP && g.qubits.size() >= 3) {
          emit_ladder(r.events, pool, g.qubits, true, g.theta, 0, e.span);
        } else {
          r.events.push_back(e);
        }
        break;
      }
    }
  }
  return r;
}

}  // namespace qmod::ir
