#pragma once

#include <string>

#include "qmod/frontend/ast.hpp"

namespace qmod::frontend {

/// Canonical surface syntax; the output reparses to the same tree.
std::string pretty_print(const Program& program);
std::string pretty_print(const Expr& expr);
std::string pretty_print(const Path& path);

/// Span-free S-expression form, e.g. `add(mul(mul(0.25, a), b), 1.5)`.
/// Two trees are structurally identical iff their dumps are equal.
std::string dump(const Expr& expr);
std::string dump(const Program& program);

}  // namespace qmod::frontend
