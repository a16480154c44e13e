#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmod {

/// Half-open source range. Lines and columns are 1-based; a default span
/// (line 0) means "no location".
struct SourceSpan {
  std::uint32_t line = 0;
  std::uint32_t column = 0;
  std::uint32_t end_line = 0;
  std::uint32_t end_column = 0;

  bool valid() const { return line != 0; }
  static SourceSpan merge(const SourceSpan& a, const SourceSpan& b);
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity { Note, Warning, Error };

const char* to_string(Severity s);

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string message;
  SourceSpan span;
  std::optional<std::string> hint;

  /// `file:line:col: severity: message`, plus an indented hint line.
  std::string format(const std::string& file) const;
};

class DiagnosticList {
 public:
  void error(std::string message, SourceSpan span, std::optional<std::string> hint = std::nullopt);
  void warning(std::string message, SourceSpan span, std::optional<std::string> hint = std::nullopt);
  void add(Diagnostic d);
  void append(const DiagnosticList& other);

  bool has_errors() const;
  std::size_t error_count() const;
  const std::vector<Diagnostic>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  std::string format(const std::string& file) const;

 private:
  std::vector<Diagnostic> items_;
};

/// Base for every positioned error thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(const std::string& kind, const std::string& message, SourceSpan span = {});

  const std::string& kind() const { return kind_; }
  const std::string& detail() const { return detail_; }
  const SourceSpan& span() const { return span_; }
  Diagnostic to_diagnostic() const;

 private:
  std::string kind_;
  std::string detail_;
  SourceSpan span_;
};

}  // namespace qmod
