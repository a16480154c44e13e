#pragma once

#include <map>
#include <string>

#include "qmod/common/source.hpp"
#include "qmod/frontend/ast.hpp"
#include "qmod/frontend/classical.hpp"
#include "qmod/sema/typed_program.hpp"

namespace qmod::sema {

struct AnalysisOptions {
  int machine_precision = 8;
  /// Compile-time constants visible everywhere (NUM_SEGS, NUM_LAYERS, ...).
  std::map<std::string, frontend::ClassicalValue> constants;
  /// Values of main's classical parameters.
  std::map<std::string, frontend::ClassicalValue> arguments;
};

struct AnalysisResult {
  TypedProgram program;
  DiagnosticList diagnostics;
};

/// Name resolution, type checking with packed-view conversion, format
/// inference and inlining of every call reachable from `main`.
AnalysisResult resolve_and_typecheck(const frontend::Program& program, const AnalysisOptions& options);

DiagnosticList check_init_flow(const TypedProgram& program);
DiagnosticList check_within_apply(const TypedProgram& program);

/// All of the above; the program is only meaningful without errors.
AnalysisResult analyze(const frontend::Program& program, const AnalysisOptions& options);

}  // namespace qmod::sema
