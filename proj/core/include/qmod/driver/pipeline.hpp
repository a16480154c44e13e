#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmod/frontend/ast.hpp"
#include "qmod/frontend/classical.hpp"
#include "qmod/ir/circuit.hpp"
#include "qmod/sema/typed_program.hpp"
#include "qmod/sim/statevector.hpp"

namespace qmod::driver {

struct CompileOptions {
  int machine_precision = 8;
  std::map<std::string, frontend::ClassicalValue> constants;
  std::map<std::string, frontend::ClassicalValue> arguments;
  bool recycle = true;
  bool markers = true;
};

struct Compilation {
  frontend::Program ast;
  sema::TypedProgram program;
  DiagnosticList diagnostics;
  /// Synthesized circuit (multi-controlled gates kept).
  ir::Circuit circuit;
  /// After decompose_multicontrol; what gets emitted and simulated.
  ir::Circuit lowered;

  bool ok() const { return !diagnostics.has_errors(); }
};

/// frontend -> sema -> synth -> decompose. Failures end up in `diagnostics`.
Compilation compile(std::string_view source, const CompileOptions& options = {});

std::string read_file(const std::string& path);

/// `0.5`, `pi/4`, `-3` or `[0.1, 0.2]`.
frontend::ClassicalValue parse_value(std::string_view text);

/// Splits `name=value` and parses the value.
std::pair<std::string, frontend::ClassicalValue> parse_binding(std::string_view text);

sim::RunResult simulate(const Compilation& c, const sim::RunOptions& options = {});

class DegenerateSegment : public Error {
 public:
  explicit DegenerateSegment(const std::string& m) : Error("DegenerateSegment", m) {}
};

/// Line a*x + b through f at the segment ends, or at the two Chebyshev nodes
/// of the segment.
std::pair<double, double> linear_coefs(const std::function<double(double)>& f, double lo, double hi,
                                       bool chebyshev = false);

/// Coefficients for `segments` uniform pieces of [lo, hi).
std::pair<std::vector<double>, std::vector<double>> segment_coefs(const std::function<double(double)>& f,
                                                                  int segments, double lo = 0.0, double hi = 1.0,
                                                                  bool chebyshev = false);

/// tanh, sin, cos, exp, sqrt, identity; throws std::invalid_argument otherwise.
std::function<double(double)> named_function(const std::string& name);

}  // namespace qmod::driver
