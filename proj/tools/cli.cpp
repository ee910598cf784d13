#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <regex>
#include <sstream>

#include "lpmr/morphism.hpp"
#include "lpmr/parser.hpp"
#include "lpmr/relation.hpp"
#include "lpmr/skeleton.hpp"
#include "lpmr/workspace.hpp"

namespace fs = std::filesystem;

namespace lpmr::cli {
namespace {

struct Common {
  bool eta = false;
  std::uint64_t fuel = ReductionConfig{}.fuel;
  std::string format = "text";
  std::vector<std::string> includes;

  LoadOptions load_options() const { return LoadOptions{ReductionConfig{eta, fuel}, includes}; }
  bool json() const { return format == "json"; }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_flag("--eta", c.eta, "Enable eta-conversion");
  cmd->add_option("--fuel", c.fuel, "Reduction steps per conversion test")->check(CLI::PositiveNumber);
  cmd->add_option("--format", c.format, "Diagnostic format")->check(CLI::IsMember({"text", "json"}));
  // One directory per flag so that -I does not swallow positional files.
  cmd->add_option("-I,--include", c.includes, "Extra directory searched by #REQUIRE (repeatable)")
      ->type_size(1)
      ->allow_extra_args(false)
      ->check(CLI::ExistingDirectory);
}

int status_of(const LoadResult& r) {
  if (r.parse_failed) return kUsageError;
  return r.ok() ? kOk : kCheckFailure;
}

Diagnostic error_diag(std::string code, std::string msg, Span span = {}) {
  return Diagnostic{Severity::Error, std::move(code), std::move(msg), std::move(span), {}, {}};
}

int cmd_check(const std::vector<std::string>& files, const Common& c, std::ostream& out) {
  LoadOptions opts = c.load_options();
  std::vector<std::future<LoadResult>> jobs;
  for (const auto& f : files) {
    jobs.push_back(std::async(std::launch::async, [f, &opts] { return load_file(f, opts); }));
  }
  int status = kOk;
  for (auto& j : jobs) {
    LoadResult r = j.get();
    write_diagnostics(out, r.diagnostics, c.json());
    status = std::max(status, status_of(r));
  }
  return status;
}

// Loads an input theory, reporting its diagnostics when it does not check.
std::optional<LoadResult> load_input(const std::string& path, const Common& c, std::ostream& out, int& status) {
  LoadResult r = load_file(path, c.load_options());
  if (!r.ok()) {
    write_diagnostics(out, r.diagnostics, c.json());
    status = status_of(r);
    return std::nullopt;
  }
  return r;
}

bool write_file(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) {
    err << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

struct TranslateArgs {
  std::string mode = "morphism";
  std::size_t arity = 2;
  std::string source, target, out, filled;
};

int cmd_translate(const TranslateArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  int status = kOk;
  auto src = load_input(a.source, c, out, status);
  if (!src) return status;
  auto tgt = load_input(a.target, c, out, status);
  if (!tgt) return status;
  SkeletonOptions o;
  o.kind = a.mode == "relation" ? SkeletonKind::Relation : SkeletonKind::Morphism;
  o.arity = a.arity;
  o.target_module = fs::path(a.target).stem().string();
  std::string text;
  try {
    text = generate_skeleton(src->theory, tgt->theory, o);
  } catch (const Error& e) {
    write_diagnostics(out, {error_diag("skeleton-collision", e.what())}, c.json());
    return kCheckFailure;
  }
  return write_file(a.out, text, err) ? kOk : kCheckFailure;
}

// Relation mode (and its arity) is recognized from `_lr` / `_mu_<i>` names.
SkeletonOptions detect_mode(const SourceFile& filled, const Theory& source) {
  SkeletonOptions o;
  std::size_t arity = 0;
  static const std::regex rel("^(.*)_(lr|mu_([0-9]+))$");
  for (const auto& e : filled.entries) {
    const auto* d = std::get_if<Definition>(&e);
    std::smatch m;
    if (!d || !std::regex_match(d->name, m, rel) || !source.contains(m[1].str())) continue;
    o.kind = SkeletonKind::Relation;
    if (m[3].matched) arity = std::max<std::size_t>(arity, std::stoul(m[3].str()));
  }
  if (arity > 0) o.arity = arity;
  return o;
}

int cmd_transport(const TranslateArgs& a, bool mode_given, const Common& c, std::ostream& out, std::ostream& err) {
  int status = kOk;
  auto src = load_input(a.source, c, out, status);
  if (!src) return status;
  auto tgt = load_input(a.target, c, out, status);
  if (!tgt) return status;

  std::ifstream in(a.filled, std::ios::binary);
  if (!in) {
    write_diagnostics(out, {error_diag("io-error", "cannot read " + a.filled)}, c.json());
    return kUsageError;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  SourceFile filled;
  try {
    filled = parse_file(ss.str(), a.filled);
  } catch (const ParseError& e) {
    write_diagnostics(out, {error_diag("parse-error", e.detail(), e.span())}, c.json());
    return kUsageError;
  }

  SkeletonOptions o = detect_mode(filled, src->theory);
  if (mode_given) {
    o.kind = a.mode == "relation" ? SkeletonKind::Relation : SkeletonKind::Morphism;
    o.arity = a.arity;
  }
  std::string target_module = fs::path(a.target).stem().string();
  o.target_module = target_module;
  auto source = std::make_shared<const Theory>(src->theory);
  auto target = std::make_shared<const Theory>(tgt->theory);
  ReductionConfig config{c.eta, c.fuel};

  IngestResult ing = ingest_skeleton(filled, source, target, o, config);
  if (!ing.ok()) {
    write_diagnostics(out, ing.diagnostics, c.json());
    return kCheckFailure;
  }

  std::vector<Diagnostic> failures;
  Theory transported;
  try {
    failures = check_skeleton(ing, o, config).diagnostics();
    if (failures.empty()) transported = transport_skeleton(ing, o, config);
  } catch (const Error& e) {
    failures.push_back(error_diag("internal-error", e.what()));
  }
  if (!failures.empty()) {
    write_diagnostics(out, failures, c.json());
    return kCheckFailure;
  }

  std::string text = render_transport(target_module, transported);
  if (!write_file(a.out, text, err)) return kCheckFailure;

  LoadOptions opts = c.load_options();
  opts.search_paths.push_back(fs::path(a.target).parent_path().string());
  LoadResult re = load_text(text, a.out, opts);
  if (!re.ok()) {
    std::vector<Diagnostic> ds = re.diagnostics;
    ds.insert(ds.begin(), error_diag("internal-error", "transported output does not recheck"));
    write_diagnostics(out, ds, c.json());
    return kCheckFailure;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checker and translation-skeleton tool for the lambda-Pi calculus modulo rewriting", "lpmr"};
  app.require_subcommand(1);

  Common common;
  std::vector<std::string> files;
  auto* check = app.add_subcommand("check", "Type-check files and evaluate their pragmas");
  check->add_option("files", files, "Input files")->check(CLI::ExistingFile);
  add_common(check, common);

  TranslateArgs ta;
  auto* translate = app.add_subcommand("translate", "Generate a translation skeleton");
  translate->add_option("--mode", ta.mode, "Template kind")->check(CLI::IsMember({"morphism", "relation"}));
  translate->add_option("--arity", ta.arity, "Relation arity")->check(CLI::PositiveNumber);
  translate->add_option("--source", ta.source, "Source theory")->required()->check(CLI::ExistingFile);
  translate->add_option("--target", ta.target, "Target theory")->required()->check(CLI::ExistingFile);
  translate->add_option("--out", ta.out, "Output skeleton")->required();
  add_common(translate, common);

  TranslateArgs tp;
  auto* transport = app.add_subcommand("transport", "Check a filled skeleton and transport the source definitions");
  auto* mode_opt =
      transport->add_option("--mode", tp.mode, "Template kind (default: detected)")->check(CLI::IsMember({"morphism", "relation"}));
  transport->add_option("--arity", tp.arity, "Relation arity")->check(CLI::PositiveNumber);
  transport->add_option("--filled", tp.filled, "Filled skeleton")->required()->check(CLI::ExistingFile);
  transport->add_option("--source", tp.source, "Source theory")->required()->check(CLI::ExistingFile);
  transport->add_option("--target", tp.target, "Target theory")->required()->check(CLI::ExistingFile);
  transport->add_option("--out", tp.out, "Output theory")->required();
  add_common(transport, common);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*check) return cmd_check(files, common, out);
    if (*translate) return cmd_translate(ta, common, out, err);
    return cmd_transport(tp, mode_opt->count() > 0, common, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailure;
  }
}

}  // namespace lpmr::cli
