#pragma once

#include <string>
#include <vector>

#include "lpmr/diagnostic.hpp"
#include "lpmr/parser.hpp"
#include "lpmr/rewrite.hpp"
#include "lpmr/theory.hpp"

namespace lpmr {

struct LoadOptions {
  ReductionConfig config;
  std::vector<std::string> search_paths;
};

struct LoadResult {
  Theory theory;  // every entry that checked, requirements first
  std::vector<Diagnostic> diagnostics;
  std::vector<std::string> modules;  // load order
  bool parse_failed = false;
  std::size_t asserts = 0;

  bool ok() const { return !has_errors(diagnostics); }
};

/**
 * Loads a file and, transitively, the modules it requires. `#REQUIRE m.`
 * resolves `m.dk` next to the requiring file, then in the search paths.
 * Each module is loaded once; a cycle is an error. Entries are checked in
 * order against everything loaded before them and pragmas are evaluated
 * against the theory so far.
 */
LoadResult load_file(const std::string& path, const LoadOptions& options = {});
// Same, for in-memory text; requires resolve relative to `path`'s directory.
LoadResult load_text(const std::string& text, const std::string& path, const LoadOptions& options = {});

// Concrete syntax of one theory entry, terminated by '.'.
std::string render_entry(const Entry& entry);
std::string render_theory(const Theory& theory);

}  // namespace lpmr
