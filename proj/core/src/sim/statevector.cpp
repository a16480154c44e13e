#include "qmod/sim/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qmod::sim {

namespace {

constexpr double kPrune = 1e-14;
constexpr std::size_t kMaxEntries = std::size_t{1} << 25;

bool bit(Key k, int p) { return ((k >> p) & 1) != 0; }

}  // namespace

StateVector::StateVector() { entries_.push_back({0, Amp(1.0, 0.0)}); }

Key StateVector::mask(QubitId id) const { return Key(1) << position(id); }

int StateVector::position(QubitId id) const {
  auto it = pos_.find(id);
  if (it == pos_.end()) throw std::logic_error("qubit q" + std::to_string(id) + " is not live in the simulator");
  return it->second;
}

void StateVector::allocate(QubitId id, std::size_t max_live, SourceSpan span) {
  if (pos_.count(id)) throw std::logic_error("qubit q" + std::to_string(id) + " allocated twice");
  if (pos_.size() + 1 > std::min(max_live, kMaxPositions))
    throw WidthExceeded("live width would exceed " + std::to_string(std::min(max_live, kMaxPositions)) + " qubits",
                        span);
  int p;
  if (!free_positions_.empty()) {
    p = free_positions_.back();
    free_positions_.pop_back();
  } else {
    p = next_position_++;
  }
  pos_[id] = p;
}

double StateVector::release(QubitId id, double tolerance, SourceSpan span) {
  double p1 = probability_one(id);
  if (p1 >= tolerance)
    throw NonZeroRelease("released qubit q" + std::to_string(id) + " is not |0> (P(1) = " + std::to_string(p1) + ")",
                         {id}, p1, span);
  int p = position(id);
  Key m = Key(1) << p;
  std::size_t before = entries_.size();
  entries_.erase(std::remove_if(entries_.begin(), entries_.end(), [&](const Entry& e) { return (e.key & m) != 0; }),
                 entries_.end());
  if (entries_.size() != before && p1 > 0) {
    double scale = 1.0 / std::sqrt(1.0 - p1);
    for (auto& e : entries_) e.amp *= scale;
  }
  pos_.erase(id);
  free_positions_.push_back(p);
  return p1;
}

std::vector<QubitId> StateVector::live_ids() const {
  std::vector<QubitId> ids;
  for (const auto& [id, p] : pos_) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

double StateVector::probability_one(QubitId id) const {
  Key m = mask(id);
  double s = 0;
  for (const auto& e : entries_)
    if (e.key & m) s += std::norm(e.amp);
  return s;
}

double StateVector::norm() const {
  double s = 0;
  for (const auto& e : entries_) s += std::norm(e.amp);
  return s;
}

std::vector<StateVector::Entry> StateVector::sorted_entries() const {
  auto out = entries_;
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });
  return out;
}

BigInt StateVector::code_of(Key k, const std::vector<QubitId>& ids) const {
  BigInt code = 0;
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (bit(k, position(ids[i]))) bit_set(code, static_cast<unsigned>(i));
  return code;
}

Key StateVector::key_for(const std::vector<std::pair<std::vector<QubitId>, BigInt>>& assignment) const {
  Key k = 0;
  for (const auto& [ids, code] : assignment)
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (bit_test(code, static_cast<unsigned>(i))) k |= Key(1) << position(ids[i]);
  return k;
}

Amp StateVector::amplitude(Key k) const {
  for (const auto& e : entries_)
    if (e.key == k) return e.amp;
  return 0;
}

void StateVector::prune_and_merge() {
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < entries_.size();) {
    Key k = entries_[r].key;
    Amp a = 0;
    while (r < entries_.size() && entries_[r].key == k) a += entries_[r++].amp;
    if (std::abs(a) >= kPrune) entries_[w++] = {k, a};
  }
  entries_.resize(w);
}

void StateVector::apply_1q(int p, const Amp m[2][2]) {
  Key mk = Key(1) << p;
  std::vector<Entry> out;
  out.reserve(entries_.size() * 2);
  for (const auto& e : entries_) {
    int b = bit(e.key, p) ? 1 : 0;
    Key k0 = e.key & ~mk;
    Amp a0 = m[0][b] * e.amp;
    Amp a1 = m[1][b] * e.amp;
    if (a0 != Amp(0)) out.push_back({k0, a0});
    if (a1 != Amp(0)) out.push_back({k0 | mk, a1});
  }
  entries_ = std::move(out);
  prune_and_merge();
  if (entries_.size() > kMaxEntries) throw WidthExceeded("state has too many non-zero amplitudes");
}

void StateVector::apply(const ir::Gate& g) {
  using ir::GateKind;
  std::vector<int> ps;
  ps.reserve(g.qubits.size());
  for (QubitId q : g.qubits) ps.push_back(position(q));
  const int t = ps.back();
  const Key tm = Key(1) << t;

  auto all_set = [&](Key k, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
      if (!bit(k, ps[i])) return false;
    return true;
  };
  auto phase_all = [&](Amp f) {
    for (auto& e : entries_)
      if (all_set(e.key, ps.size())) e.amp *= f;
  };
  auto flip_if = [&](std::size_t ncontrols) {
    for (auto& e : entries_)
      if (all_set(e.key, ncontrols)) e.key ^= tm;
  };

  const double th = g.theta;
  const Amp I(0, 1);
  const double r2 = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::X: flip_if(0); break;
    case GateKind::CX:
    case GateKind::CCX:
    case GateKind::MCX: flip_if(ps.size() - 1); break;
    case GateKind::Y:
      for (auto& e : entries_) {
        e.amp *= bit(e.key, t) ? -I : I;
        e.key ^= tm;
      }
      break;
    case GateKind::Z: phase_all(-1.0); break;
    case GateKind::S: phase_all(I); break;
    case GateKind::Sdg: phase_all(-I); break;
    case GateKind::T: phase_all(std::polar(1.0, std::numbers::pi / 4)); break;
    case GateKind::Tdg: phase_all(std::polar(1.0, -std::numbers::pi / 4)); break;
    case GateKind::P:
    case GateKind::CP:
    case GateKind::MCP: phase_all(std::polar(1.0, th)); break;
    case GateKind::RZ:
      for (auto& e : entries_) e.amp *= std::polar(1.0, bit(e.key, t) ? th / 2 : -th / 2);
      break;
    case GateKind::SWAP: {
      const int a = ps[0];
      for (auto& e : entries_)
        if (bit(e.key, a) != bit(e.key, t)) e.key ^= (Key(1) << a) | tm;
      break;
    }
    case GateKind::H: {
      const Amp m[2][2] = {{r2, r2}, {r2, -r2}};
      apply_1q(t, m);
      break;
    }
    case GateKind::RX: {
      const double c = std::cos(th / 2), s = std::sin(th / 2);
      const Amp m[2][2] = {{c, -I * s}, {-I * s, c}};
      apply_1q(t, m);
      break;
    }
    case GateKind::RY: {
      const double c = std::cos(th / 2), s = std::sin(th / 2);
      const Amp m[2][2] = {{c, -s}, {s, c}};
      apply_1q(t, m);
      break;
    }
  }
}

void run_events(StateVector& s, const std::vector<ir::Event>& events, const RunOptions& options, RunResult* audit) {
  for (const auto& e : events) {
    switch (e.kind) {
      case ir::Event::Kind::Gate:
        s.apply(e.gate);
        break;
      case ir::Event::Kind::Alloc:
        for (QubitId q : e.ids) s.allocate(q, options.max_qubits, e.span);
        if (audit) audit->peak_width = std::max(audit->peak_width, s.live_count());
        break;
      case ir::Event::Kind::Release:
        for (QubitId q : e.ids) {
          double p1 = s.probability_one(q);
          if (audit) {
            ++audit->releases;
            audit->max_release_residual = std::max(audit->max_release_residual, p1);
          }
          if (p1 >= options.release_tolerance && !options.strict_release) {
            if (audit) audit->release_failures.push_back({"release", {q}, p1, e.span});
            s.release(q, 2.0, e.span);
          } else {
            s.release(q, options.release_tolerance, e.span);
          }
        }
        break;
      case ir::Event::Kind::Marker: {
        if (!audit) break;
        std::vector<QubitId> bound = e.ids;
        std::sort(bound.begin(), bound.end());
        HygieneViolation v{e.label, {}, 0.0, e.span};
        for (QubitId q : s.live_ids()) {
          if (std::binary_search(bound.begin(), bound.end(), q)) continue;
          double p1 = s.probability_one(q);
          if (p1 >= options.release_tolerance) {
            v.qubits.push_back(q);
            v.probability = std::max(v.probability, p1);
          }
        }
        if (!v.qubits.empty()) audit->hygiene.push_back(std::move(v));
        break;
      }
    }
  }
}

RunResult run(const ir::Circuit& c, const RunOptions& options) {
  RunResult r;
  run_events(r.state, c.events, options, &r);
  return r;
}

std::map<Key, double> relative_phases(const StateVector& s, Key reference) {
  Amp ref = s.amplitude(reference);
  if (std::abs(ref) <= 1e-12) throw ZeroReference("reference basis state has zero amplitude");
  std::map<Key, double> out;
  for (const auto& e : s.entries()) {
    if (std::abs(e.amp) <= 1e-12) continue;
    double ph = std::arg(e.amp / ref);
    if (ph < 0) ph += 2 * std::numbers::pi;
    out[e.key] = ph;
  }
  return out;
}

Amp marginal_amplitude(const StateVector& s, const std::vector<QubitId>& ids, const BigInt& pattern) {
  const StateVector::Entry* hit = nullptr;
  for (const auto& e : s.entries()) {
    if (s.code_of(e.key, ids) != pattern) continue;
    if (hit) throw NotSeparable("the rest of the register is in superposition for this pattern");
    hit = &e;
  }
  return hit ? hit->amp : Amp(0);
}

}  // namespace qmod::sim
