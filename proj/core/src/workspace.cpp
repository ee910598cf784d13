#include "lpmr/workspace.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "lpmr/printer.hpp"
#include "lpmr/typecheck.hpp"

namespace fs = std::filesystem;

namespace lpmr {
namespace {

Diagnostic diag(Severity s, std::string code, std::string msg, Span span, Term e = {}, Term a = {}) {
  return Diagnostic{s, std::move(code), std::move(msg), std::move(span), std::move(e), std::move(a)};
}

class Loader {
 public:
  explicit Loader(const LoadOptions& options) : options_(options), checker_(options.config) {}

  LoadResult result;

  void load_path(const fs::path& path, const Span& from) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      result.diagnostics.push_back(diag(Severity::Error, "io-error", "cannot read " + path.string(), from));
      return;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    load_source(ss.str(), path);
  }

  void load_source(const std::string& text, const fs::path& path) {
    std::string key = fs::weakly_canonical(fs::absolute(path)).string();
    loaded_.insert(key);
    stack_.push_back(key);
    SourceFile file;
    try {
      file = parse_file(text, path.string());
    } catch (const ParseError& e) {
      result.parse_failed = true;
      result.diagnostics.push_back(diag(Severity::Error, "parse-error", e.detail() + expected_text(e), e.span()));
      stack_.pop_back();
      return;
    }
    result.modules.push_back(file.module);
    for (const auto& entry : file.entries) {
      if (const auto* r = std::get_if<Require>(&entry)) {
        require(*r, path);
      } else if (const auto* p = std::get_if<Pragma>(&entry)) {
        pragma(*p);
      } else if (const auto* d = std::get_if<ConstantDecl>(&entry)) {
        add(*d);
      } else if (const auto* d = std::get_if<Definition>(&entry)) {
        add(*d);
      } else {
        add(std::get<RewriteRule>(entry));
      }
    }
    stack_.pop_back();
  }

  const Theory& theory() const { return checker_.theory(); }

 private:
  static std::string expected_text(const ParseError& e) {
    if (e.expected().empty()) return "";
    std::string out = "; expected ";
    for (std::size_t i = 0; i < e.expected().size(); ++i) {
      if (i) out += i + 1 == e.expected().size() ? " or " : ", ";
      out += e.expected()[i];
    }
    return out;
  }

  void add(const Entry& e) {
    auto ds = checker_.add(e);
    result.diagnostics.insert(result.diagnostics.end(), ds.begin(), ds.end());
  }

  void require(const Require& r, const fs::path& from) {
    std::vector<fs::path> candidates;
    candidates.push_back(from.parent_path() / (r.module + ".dk"));
    for (const auto& dir : options_.search_paths) candidates.push_back(fs::path(dir) / (r.module + ".dk"));
    for (const auto& c : candidates) {
      std::error_code ec;
      if (!fs::exists(c, ec)) continue;
      std::string key = fs::weakly_canonical(fs::absolute(c)).string();
      if (std::find(stack_.begin(), stack_.end(), key) != stack_.end()) {
        result.diagnostics.push_back(diag(Severity::Error, "require-cycle", "cyclic #REQUIRE of " + r.module, r.span));
        return;
      }
      if (loaded_.count(key)) return;
      load_path(c, r.span);
      return;
    }
    result.diagnostics.push_back(diag(Severity::Error, "require-not-found", "cannot find module " + r.module, r.span));
  }

  void pragma(const Pragma& p) {
    Checker ck(theory(), options_.config);
    try {
      switch (p.kind) {
        case Pragma::Kind::Assert: {
          ++result.asserts;
          ck.infer(Context(), p.terms[0]);
          ck.infer(Context(), p.terms[1]);
          if (!ck.convertible(p.terms[0], p.terms[1])) {
            result.diagnostics.push_back(diag(Severity::Error, "assert-failed",
                                              pretty(p.terms[0]) + " and " + pretty(p.terms[1]) + " are not convertible",
                                              p.span, normalize(theory(), p.terms[0], options_.config),
                                              normalize(theory(), p.terms[1], options_.config)));
          }
          break;
        }
        case Pragma::Kind::Check:
          ck.check_classifier(Context(), p.terms[1]);
          ck.check(Context(), p.terms[0], p.terms[1]);
          break;
        case Pragma::Kind::Eval: {
          ck.infer(Context(), p.terms[0]);
          Term n = normalize(theory(), p.terms[0], options_.config);
          result.diagnostics.push_back(diag(Severity::Note, "eval", pretty(n), p.span));
          break;
        }
      }
    } catch (const TypeError& e) {
      result.diagnostics.push_back(diag(Severity::Error, e.code(), e.what(), p.span, e.expected(), e.actual()));
    } catch (const FuelExhausted& e) {
      result.diagnostics.push_back(diag(Severity::Error, "fuel-exhausted", e.what(), p.span));
    }
  }

  const LoadOptions& options_;
  TheoryChecker checker_;
  std::set<std::string> loaded_;
  std::vector<std::string> stack_;
};

}  // namespace

LoadResult load_file(const std::string& path, const LoadOptions& options) {
  Loader loader(options);
  loader.load_path(path, Span{path, 0, 0});
  LoadResult r = std::move(loader.result);
  r.theory = loader.theory();
  r.theory.set_name(fs::path(path).stem().string());
  return r;
}

LoadResult load_text(const std::string& text, const std::string& path, const LoadOptions& options) {
  Loader loader(options);
  loader.load_source(text, path);
  LoadResult r = std::move(loader.result);
  r.theory = loader.theory();
  r.theory.set_name(fs::path(path).stem().string());
  return r;
}

std::string render_entry(const Entry& entry) {
  if (const auto* d = std::get_if<ConstantDecl>(&entry)) return d->name + " : " + pretty(d->type) + ".";
  if (const auto* d = std::get_if<Definition>(&entry)) {
    return std::string(d->opaque ? "thm " : "def ") + d->name + " : " + pretty(d->type) + " := " + pretty(d->body) +
           ".";
  }
  const auto& r = std::get<RewriteRule>(entry);
  std::string vars;
  for (const auto& v : r.pattern_vars) vars += (vars.empty() ? "" : ", ") + v;
  return std::string(r.unchecked ? "unchecked " : "") + "[" + vars + "] " + pretty(r.lhs) + " --> " + pretty(r.rhs) +
         ".";
}

std::string render_theory(const Theory& theory) {
  std::string out;
  for (const auto& e : theory.entries()) out += render_entry(e) + "\n";
  return out;
}

}  // namespace lpmr
