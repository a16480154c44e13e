#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qmod/common/rational.hpp"
#include "qmod/common/source.hpp"
#include "qmod/ir/circuit.hpp"

namespace qmod::sim {

using Amp = std::complex<double>;
/// Basis state over physical positions; bit p is the value of position p.
using Key = unsigned __int128;
using ir::QubitId;

constexpr std::size_t kMaxPositions = 128;

class WidthExceeded : public Error {
 public:
  WidthExceeded(const std::string& m, SourceSpan s = {}) : Error("WidthExceeded", m, s) {}
};

class NonZeroRelease : public Error {
 public:
  NonZeroRelease(const std::string& m, std::vector<QubitId> ids, double prob, SourceSpan s)
      : Error("NonZeroRelease", m, s), ids_(std::move(ids)), probability_(prob) {}
  const std::vector<QubitId>& qubits() const { return ids_; }
  double probability() const { return probability_; }

 private:
  std::vector<QubitId> ids_;
  double probability_;
};

class ZeroReference : public Error {
 public:
  explicit ZeroReference(const std::string& m) : Error("ZeroReference", m) {}
};

class NotSeparable : public Error {
 public:
  explicit NotSeparable(const std::string& m) : Error("NotSeparable", m) {}
};

/// Sparse state over the live qubits: only basis states with non-negligible
/// amplitude are stored. Virtual qubit ids map to physical bit positions that
/// are reused after release.
class StateVector {
 public:
  struct Entry {
    Key key;
    Amp amp;
  };

  StateVector();

  /// Adds a qubit in |0>. Throws WidthExceeded beyond `max_live` live qubits.
  void allocate(QubitId id, std::size_t max_live = kMaxPositions, SourceSpan span = {});
  /// Removes a qubit after checking P(1) < tolerance; returns that probability.
  double release(QubitId id, double tolerance = 1e-9, SourceSpan span = {});
  void apply(const ir::Gate& g);

  bool is_live(QubitId id) const { return pos_.count(id) != 0; }
  std::vector<QubitId> live_ids() const;
  std::size_t live_count() const { return pos_.size(); }
  int position(QubitId id) const;

  double probability_one(QubitId id) const;
  double norm() const;
  const std::vector<Entry>& entries() const { return entries_; }
  /// Entries sorted by key (deterministic order).
  std::vector<Entry> sorted_entries() const;

  /// Unsigned code of the register `ids` (LSB-first) inside basis state `k`.
  BigInt code_of(Key k, const std::vector<QubitId>& ids) const;
  /// Basis key with the given register codes and all other live qubits 0.
  Key key_for(const std::vector<std::pair<std::vector<QubitId>, BigInt>>& assignment) const;
  Amp amplitude(Key k) const;

 private:
  std::vector<Entry> entries_;
  std::unordered_map<QubitId, int> pos_;
  std::vector<int> free_positions_;
  int next_position_ = 0;

  Key mask(QubitId id) const;
  void apply_1q(int p, const Amp m[2][2]);
  void prune_and_merge();
};

struct HygieneViolation {
  std::string label;
  std::vector<QubitId> qubits;
  double probability = 0;
  SourceSpan span;
};

struct RunOptions {
  std::size_t max_qubits = kMaxPositions;
  double release_tolerance = 1e-9;
  /// When false, failed release checks are recorded instead of thrown.
  bool strict_release = true;
};

struct RunResult {
  StateVector state;
  std::size_t releases = 0;
  std::size_t peak_width = 0;
  /// Largest P(1) seen on any released qubit.
  double max_release_residual = 0;
  std::vector<HygieneViolation> release_failures;
  /// Marker checkpoints where a qubit outside the bound set was not |0>.
  std::vector<HygieneViolation> hygiene;
};

RunResult run(const ir::Circuit& c, const RunOptions& options = {});
/// Applies `events` to an existing state (allocations included).
void run_events(StateVector& s, const std::vector<ir::Event>& events, const RunOptions& options, RunResult* audit);

/// arg(a_v / a_ref) in [0, 2pi) for every stored basis state except those
/// below 1e-12 magnitude.
std::map<Key, double> relative_phases(const StateVector& s, Key reference);

/// Amplitude of `pattern` on `ids` when the rest of the register is in a
/// single basis state for that pattern (0 when the pattern is absent).
Amp marginal_amplitude(const StateVector& s, const std::vector<QubitId>& ids, const BigInt& pattern);

}  // namespace qmod::sim
