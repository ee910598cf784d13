#include "lpmr/diagnostic.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "lpmr/printer.hpp"

namespace lpmr {

TypeError::TypeError(std::string code, std::string message, Term expected, Term actual)
    : Error(std::move(message)),
      code_(std::move(code)),
      expected_(std::move(expected)),
      actual_(std::move(actual)) {}

const char* severity_name(Severity s) {
  switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Note: return "note";
  }
  return "?";
}

bool has_errors(const std::vector<Diagnostic>& ds) {
  return std::any_of(ds.begin(), ds.end(), [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::size_t count(const std::vector<Diagnostic>& ds, Severity s) {
  return static_cast<std::size_t>(
      std::count_if(ds.begin(), ds.end(), [s](const Diagnostic& d) { return d.severity == s; }));
}

std::string format_text(const Diagnostic& d) {
  std::string loc = d.span.file.empty() ? "<none>" : d.span.file;
  loc += ":" + std::to_string(d.span.line) + ":" + std::to_string(d.span.col);
  std::string out = std::string(severity_name(d.severity)) + " " + loc + " " + d.code + " " + d.message;
  if (d.expected) out += "\n  expected: " + pretty(d.expected);
  if (d.actual) out += "\n  actual:   " + pretty(d.actual);
  return out;
}

std::string format_json(const Diagnostic& d) {
  nlohmann::json j = {
      {"severity", severity_name(d.severity)},
      {"file", d.span.file},
      {"line", d.span.line},
      {"col", d.span.col},
      {"code", d.code},
      {"message", d.message},
  };
  if (d.expected) j["expected"] = pretty(d.expected);
  if (d.actual) j["actual"] = pretty(d.actual);
  return j.dump();
}

void write_diagnostics(std::ostream& os, const std::vector<Diagnostic>& ds, bool json) {
  for (const auto& d : ds) os << (json ? format_json(d) : format_text(d)) << "\n";
}

}  // namespace lpmr
