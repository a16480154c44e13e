#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qmod/ir/circuit.hpp"
#include "qmod/sim/statevector.hpp"

namespace qmod::sim {

/// Renders the register value of `code` under `type`: numbers in decimal,
/// arrays as `[a, b]`, records as `{f: a, g: b}`.
std::string decode_value(const BigInt& code, const types::QType& type);

/// Tuple of decoded output values for one basis state.
std::vector<std::string> decode_outputs(const StateVector& s, Key k, const std::vector<ir::OutputRegister>& outs);

struct VariableCounts {
  std::string name;
  std::map<std::string, std::uint64_t> counts;
};

struct SampleResult {
  std::vector<VariableCounts> variables;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

/// Multinomial sampling from |a|^2; identical seeds give identical results.
SampleResult sample(const StateVector& s, const std::vector<ir::OutputRegister>& outs, std::uint64_t shots,
                    std::uint64_t seed);

/// Exact probability of each joint output tuple.
std::map<std::vector<std::string>, double> output_distribution(const StateVector& s,
                                                               const std::vector<ir::OutputRegister>& outs);

}  // namespace qmod::sim
