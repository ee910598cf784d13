#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "lpmr/error.hpp"
#include "lpmr/span.hpp"
#include "lpmr/term.hpp"

namespace lpmr {

enum class Severity { Error, Warning, Note };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  Span span;
  Term expected;  // optional
  Term actual;    // optional
};

// A typing or checking failure carrying a diagnostic code.
class TypeError : public Error {
 public:
  TypeError(std::string code, std::string message, Term expected = {}, Term actual = {});
  const std::string& code() const { return code_; }
  const Term& expected() const { return expected_; }
  const Term& actual() const { return actual_; }

 private:
  std::string code_;
  Term expected_;
  Term actual_;
};

const char* severity_name(Severity s);
bool has_errors(const std::vector<Diagnostic>& ds);
std::size_t count(const std::vector<Diagnostic>& ds, Severity s);

// `severity file:line:col code message`
std::string format_text(const Diagnostic& d);
// One JSON object, no trailing newline.
std::string format_json(const Diagnostic& d);

void write_diagnostics(std::ostream& os, const std::vector<Diagnostic>& ds, bool json);

}  // namespace lpmr
