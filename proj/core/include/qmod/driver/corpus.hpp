#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmod/driver/pipeline.hpp"

namespace qmod::driver {

struct LinearCoefsBinding {
  std::string function;
  int segments = 1;
  bool chebyshev = false;
  std::string a_name = "a_coefs";
  std::string b_name = "b_coefs";
};

/// What a corpus program must produce.
///  - distribution: exact probability of every output tuple
///  - phases: arg(a_k / a_reference) for every output tuple
///  - marginal: probability of one variable taking one value
///  - oracle: checked by a named classical oracle in the test suite
struct Expectation {
  std::string kind;
  std::map<std::string, double> values;
  std::string reference;
  std::string variable;
  std::string value;
  double probability = 0;
  std::string oracle;
};

struct CorpusEntry {
  std::string name;
  /// Absolute paths.
  std::string file;
  std::string golden;
  int machine_precision = 8;
  std::map<std::string, std::string> constants;
  std::map<std::string, std::string> arguments;
  std::optional<LinearCoefsBinding> linear_coefs;
  Expectation expect;
};

/// Reads `manifest.json`; relative paths resolve against its directory.
std::vector<CorpusEntry> load_manifest(const std::string& path);

CompileOptions entry_options(const CorpusEntry& e);

/// Binds the per-segment coefficient arrays of `b` as main arguments.
void bind_linear_coefs(CompileOptions& o, const LinearCoefsBinding& b);

/// Output tuple joined with "; " (the key format of Expectation::values).
std::string tuple_key(const std::vector<std::string>& values);

}  // namespace qmod::driver
