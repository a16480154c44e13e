#pragma once

#include <string_view>
#include <vector>

#include "qmod/frontend/ast.hpp"
#include "qmod/frontend/token.hpp"

namespace qmod::frontend {

class ParseError : public Error {
 public:
  ParseError(const std::string& message, SourceSpan span) : Error("ParseError", message, span) {}
};

/// Recursive-descent parser over a token stream produced by tokenize().
/// Binary precedence, tightest first: unary, `**`, `* /`, `+ -`, shifts,
/// relational, `&`, `^`, `|`, `and`, `or`.
Program parse(const std::vector<Token>& tokens);

/// tokenize + parse.
Program parse_source(std::string_view source);

/// Parses a single expression (used by tests and the CLI's `--arg` values).
ExprPtr parse_expression(std::string_view source);

}  // namespace qmod::frontend
