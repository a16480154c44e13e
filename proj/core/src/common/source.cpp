#include "qmod/common/source.hpp"

#include <algorithm>
#include <sstream>

namespace qmod {

SourceSpan SourceSpan::merge(const SourceSpan& a, const SourceSpan& b) {
  if (!a.valid()) return b;
  if (!b.valid()) return a;
  SourceSpan out = a;
  if (b.end_line > out.end_line || (b.end_line == out.end_line && b.end_column > out.end_column)) {
    out.end_line = b.end_line;
    out.end_column = b.end_column;
  }
  if (b.line < out.line || (b.line == out.line && b.column < out.column)) {
    out.line = b.line;
    out.column = b.column;
  }
  return out;
}

const char* to_string(Severity s) {
  switch (s) {
    case Severity::Note:
      return "note";
    case Severity::Warning:
      return "warning";
    case Severity::Error:
      return "error";
  }
  return "error";
}

std::string Diagnostic::format(const std::string& file) const {
  std::ostringstream os;
  os << file << ':' << span.line << ':' << span.column << ": " << to_string(severity) << ": "
     << message;
  if (hint) os << "\n  hint: " << *hint;
  return os.str();
}

void DiagnosticList::error(std::string message, SourceSpan span, std::optional<std::string> hint) {
  add({Severity::Error, std::move(message), span, std::move(hint)});
}

void DiagnosticList::warning(std::string message, SourceSpan span,
                             std::optional<std::string> hint) {
  add({Severity::Warning, std::move(message), span, std::move(hint)});
}

void DiagnosticList::add(Diagnostic d) {
  // The same problem reached through two analyses is reported once.
  auto same = [&](const Diagnostic& x) {
    return x.severity == d.severity && x.message == d.message && x.span == d.span;
  };
  if (std::find_if(items_.begin(), items_.end(), same) != items_.end()) return;
  items_.push_back(std::move(d));
}

void DiagnosticList::append(const DiagnosticList& other) {
  for (const auto& d : other.items_) add(d);
}

bool DiagnosticList::has_errors() const { return error_count() > 0; }

std::size_t DiagnosticList::error_count() const {
  return static_cast<std::size_t>(std::count_if(
      items_.begin(), items_.end(), [](const Diagnostic& d) { return d.severity == Severity::Error; }));
}

std::string DiagnosticList::format(const std::string& file) const {
  std::string out;
  for (const auto& d : items_) {
    out += d.format(file);
    out += '\n';
  }
  return out;
}

Error::Error(const std::string& kind, const std::string& message, SourceSpan span)
    : std::runtime_error(kind + ": " + message), kind_(kind), detail_(message), span_(span) {}

Diagnostic Error::to_diagnostic() const {
  return {Severity::Error, kind_ + ": " + detail_, span_, std::nullopt};
}

}  // namespace qmod
