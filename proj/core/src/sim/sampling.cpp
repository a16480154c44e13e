#include "qmod/sim/sampling.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "qmod/types/fixed_point.hpp"

namespace qmod::sim {

std::string decode_value(const BigInt& code, const types::QType& type) {
  using K = types::QType::Kind;
  auto slice = [&](int offset, int size) {
    return (code >> offset) & (pow2_int(static_cast<unsigned>(size)) - 1);
  };
  switch (type.kind()) {
    case K::Bit:
      return code == 0 ? "0" : "1";
    case K::Num:
      return qmod::to_string(types::decode_code(code, type.format()));
    case K::Array: {
      std::string s = "[";
      const int es = type.element().size();
      for (int i = 0; i < type.length(); ++i) {
        if (i) s += ", ";
        s += decode_value(slice(i * es, es), type.element());
      }
      return s + "]";
    }
    case K::Record: {
      std::string s = "{";
      int offset = 0;
      bool first = true;
      for (const auto& f : type.fields()) {
        if (!first) s += ", ";
        first = false;
        s += f.name + ": " + decode_value(slice(offset, f.type->size()), *f.type);
        offset += f.type->size();
      }
      return s + "}";
    }
  }
  return {};
}

std::vector<std::string> decode_outputs(const StateVector& s, Key k, const std::vector<ir::OutputRegister>& outs) {
  std::vector<std::string> values;
  values.reserve(outs.size());
  for (const auto& o : outs) values.push_back(decode_value(s.code_of(k, o.qubits), o.type));
  return values;
}

SampleResult sample(const StateVector& s, const std::vector<ir::OutputRegister>& outs, std::uint64_t shots,
                    std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be at least 1");
  auto entries = s.sorted_entries();
  std::vector<double> cumulative;
  cumulative.reserve(entries.size());
  double acc = 0;
  for (const auto& e : entries) cumulative.push_back(acc += std::norm(e.amp));

  SampleResult r;
  r.shots = shots;
  r.seed = seed;
  for (const auto& o : outs) r.variables.push_back({o.name, {}});

  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> hits(entries.size(), 0);
  for (std::uint64_t i = 0; i < shots; ++i) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), entries.size() - 1);
    ++hits[idx];
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!hits[i]) continue;
    auto vals = decode_outputs(s, entries[i].key, outs);
    for (std::size_t v = 0; v < outs.size(); ++v) r.variables[v].counts[vals[v]] += hits[i];
  }
  return r;
}

std::map<std::vector<std::string>, double> output_distribution(const StateVector& s,
                                                               const std::vector<ir::OutputRegister>& outs) {
  std::map<std::vector<std::string>, double> dist;
  for (const auto& e : s.entries()) dist[decode_outputs(s, e.key, outs)] += std::norm(e.amp);
  return dist;
}

}  // namespace qmod::sim
