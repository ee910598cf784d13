#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lpmr/error.hpp"
#include "lpmr/span.hpp"
#include "lpmr/term.hpp"
#include "lpmr/theory.hpp"

namespace lpmr {

class ParseError : public Error {
 public:
  ParseError(Span span, std::string message, std::vector<std::string> expected = {});
  const Span& span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& detail() const { return detail_; }

 private:
  Span span_;
  std::string detail_;
  std::vector<std::string> expected_;
};

struct Require {
  std::string module;
  Span span;
};

// #ASSERT t == u.   #CHECK t, A.   #EVAL t.
struct Pragma {
  enum class Kind { Assert, Check, Eval };
  Kind kind;
  std::vector<Term> terms;
  Span span;
};

using SourceEntry = std::variant<Require, ConstantDecl, Definition, RewriteRule, Pragma>;

struct SourceFile {
  std::string module;
  std::vector<Require> imports;
  std::vector<SourceEntry> entries;
};

/**
 * Parse a whole file.
 *
 *   c : A.                       declaration (also `def c : A.`)
 *   def c : A := t.              transparent definition
 *   thm c : A := t.              opaque definition
 *   [x, y] l --> r.              rewrite rule; `unchecked [x] l --> r.` skips typing
 *   #REQUIRE m.  #ASSERT t == u.  #CHECK t, A.  #EVAL t.
 *
 * Terms: `x : A -> B`, `A -> B`, `x => t`, `x : A => t`, application by
 * juxtaposition, parentheses, `Type`. Comments are `(; ... ;)` and nest.
 */
SourceFile parse_file(std::string_view text, const std::string& file_name = "<input>");

// Parse a single term. Identifiers listed in `free` become free variables,
// all other unbound identifiers are constants.
Term parse_term(std::string_view text, const std::vector<std::string>& free = {});

// Declarations, definitions and rules of a file, in order (pragmas and
// requires are dropped).
Theory to_theory(const SourceFile& file, const std::string& name = "");

bool is_identifier(std::string_view s);

}  // namespace lpmr
