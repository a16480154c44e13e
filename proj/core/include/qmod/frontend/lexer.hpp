#pragma once

#include <string_view>
#include <vector>

#include "qmod/frontend/token.hpp"

namespace qmod::frontend {

class LexError : public Error {
 public:
  LexError(const std::string& message, SourceSpan span) : Error("LexError", message, span) {}
};

/// Splits Qmod source into tokens. `//` comments and whitespace are skipped;
/// the result always ends with a single End token.
std::vector<Token> tokenize(std::string_view source);

}  // namespace qmod::frontend
