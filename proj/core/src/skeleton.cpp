#include "lpmr/skeleton.hpp"

#include <functional>
#include <set>

#include "lpmr/printer.hpp"
#include "lpmr/typecheck.hpp"
#include "lpmr/workspace.hpp"

namespace lpmr {
namespace {

constexpr std::size_t kLineWidth = 60;

std::string def_line(const std::string& keyword, const std::string& name, const Term& type, const std::string& body) {
  std::string head = keyword + " " + name + " : " + pretty(type);
  std::string one = head + " := " + body + ".";
  if (one.size() <= kLineWidth) return one + "\n";
  return head + "\n  := " + body + ".\n";
}

Morphism suffix_morphism(const Theory& source, const std::string& suffix) {
  auto src = std::make_shared<const Theory>(source);
  Morphism m;
  m.name = source.name() + suffix;
  m.source = src;
  m.target = src;
  m.definition_suffix = suffix;
  for (const auto& c : source.primitives()) m.assignment.emplace(c, Term::constant(c + suffix));
  return m;
}

LogicalRelation suffix_relation(const Theory& source, std::size_t n) {
  std::vector<Morphism> ms;
  for (std::size_t i = 1; i <= n; ++i) ms.push_back(suffix_morphism(source, morphism_suffix(SkeletonKind::Relation, i)));
  std::map<std::string, Term> a;
  for (const auto& c : source.primitives()) a.emplace(c, Term::constant(c + "_lr"));
  return make_relation(source.name() + "_lr", std::move(ms), std::move(a));
}

std::string frozen_name(std::size_t k, const std::string& x) { return "_r" + std::to_string(k) + "_" + x; }

class Generator {
 public:
  Generator(const Theory& source, const Theory& target, const SkeletonOptions& o)
      : source_(source), target_(target), options_(o) {}

  std::string run() {
    out_ = "#REQUIRE " + options_.target_module + ".\n";
    std::size_t k = 0;
    std::size_t last = std::variant_npos;
    for (const auto& e : source_.entries()) {
      if (e.index() != last || std::holds_alternative<RewriteRule>(e)) out_ += "\n";
      last = e.index();
      if (const auto* d = std::get_if<ConstantDecl>(&e)) {
        primitive(*d);
      } else if (const auto* d = std::get_if<Definition>(&e)) {
        definition(*d);
      } else {
        rule(std::get<RewriteRule>(e), ++k);
      }
    }
    return out_;
  }

 private:
  bool relation() const { return options_.kind == SkeletonKind::Relation; }

  std::size_t n() const { return relation() ? options_.arity : 1; }

  void claim(const std::string& name) {
    if (target_.contains(name) || !generated_.insert(name).second) {
      throw Error("generated name '" + name + "' collides with an existing constant");
    }
  }

  void primitive(const ConstantDecl& d) {
    if (!relation()) {
      Morphism m = suffix_morphism(source_, "_mu");
      claim(d.name + "_mu");
      out_ += def_line("def", d.name + "_mu", apply_morphism(m, d.type), "TODO");
      return;
    }
    LogicalRelation lr = suffix_relation(source_, n());
    for (std::size_t i = 1; i <= n(); ++i) {
      std::string name = d.name + morphism_suffix(SkeletonKind::Relation, i);
      claim(name);
      out_ += def_line("def", name, apply_morphism(lr.morphisms[i - 1], d.type), "TODO");
    }
    Term c = Term::constant(d.name);
    Term ty = is_kind(d.type) ? translate_kind(lr, c, d.type) : related(lr, d.type, c);
    claim(d.name + "_lr");
    out_ += def_line("def", d.name + "_lr", ty, "TODO");
  }

  void definition(const Definition& d) {
    const std::string kw = d.opaque ? "thm" : "def";
    if (!relation()) {
      Morphism m = suffix_morphism(source_, "_mu");
      claim(d.name + "_mu");
      out_ += def_line(kw, d.name + "_mu", apply_morphism(m, d.type), pretty(apply_morphism(m, d.body)));
      return;
    }
    LogicalRelation lr = suffix_relation(source_, n());
    for (std::size_t i = 1; i <= n(); ++i) {
      const auto& m = lr.morphisms[i - 1];
      claim(d.name + m.definition_suffix);
      // Transparent: d_lr's type mentions the copies.
      out_ += def_line("def", d.name + m.definition_suffix, apply_morphism(m, d.type), pretty(apply_morphism(m, d.body)));
    }
    Term c = Term::constant(d.name);
    Term ty = is_kind(d.type) ? translate_kind(lr, c, d.type) : related(lr, d.type, c);
    claim(d.name + "_lr");
    out_ += def_line(kw, d.name + "_lr", ty, pretty(translate_term(lr, d.body)));
  }

  void rule(const RewriteRule& r, std::size_t k) {
    Term l = r.delinearized_lhs();
    Term rhs = r.delinearized_rhs();
    out_ += "(; rule " + std::to_string(k) + ": " + pretty(l) + " --> " + pretty(rhs) + " ;)\n";
    if (r.unchecked) {
      out_ += "(; unchecked in the source: no frozen variables or assertions ;)\n";
      return;
    }
    Substitution sigma;
    auto freeze = [&](const std::string& var, const std::string& name, const Term& type) {
      claim(name);
      out_ += name + " : " + pretty(subst(type, sigma)) + ".\n";
      sigma.bind(var, Term::constant(name));
    };
    if (!relation()) {
      Morphism m = suffix_morphism(source_, "_mu");
      for (const auto& b : r.context) freeze(b.name, frozen_name(k, b.name), apply_morphism(m, b.type));
      out_ += "#ASSERT " + pretty(subst(apply_morphism(m, l), sigma)) + " == " +
              pretty(subst(apply_morphism(m, rhs), sigma)) + ".\n";
      return;
    }
    LogicalRelation lr = suffix_relation(source_, n());
    for (const auto& b : r.context) {
      for (std::size_t i = 1; i <= n(); ++i) {
        freeze(copy_name(b.name, i), frozen_name(k, b.name) + "_" + std::to_string(i),
               relation_image(lr, i, b.type));
      }
      freeze(star_name(b.name), frozen_name(k, b.name) + "_s", related(lr, b.type, Term::free(b.name)));
    }
    for (std::size_t i = 1; i <= n(); ++i) {
      out_ += "#ASSERT " + pretty(subst(relation_image(lr, i, l), sigma)) + " == " +
              pretty(subst(relation_image(lr, i, rhs), sigma)) + ".\n";
    }
    out_ += "#ASSERT " + pretty(subst(translate_term(lr, l), sigma)) + " == " +
            pretty(subst(translate_term(lr, rhs), sigma)) + ".\n";
  }

  const Theory& source_;
  const Theory& target_;
  const SkeletonOptions& options_;
  std::set<std::string> generated_;
  std::string out_;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Splits a generated name into (source name, slot) where slot 0 is `_mu` or
// `_lr` and slot i >= 1 is `_mu_i`.
std::optional<std::pair<std::string, std::size_t>> split_generated(const std::string& name,
                                                                   const SkeletonOptions& o) {
  if (o.kind == SkeletonKind::Morphism) {
    if (ends_with(name, "_mu")) return std::make_pair(name.substr(0, name.size() - 3), std::size_t{1});
    return std::nullopt;
  }
  if (ends_with(name, "_lr")) return std::make_pair(name.substr(0, name.size() - 3), std::size_t{0});
  for (std::size_t i = 1; i <= o.arity; ++i) {
    std::string suf = morphism_suffix(SkeletonKind::Relation, i);
    if (ends_with(name, suf)) return std::make_pair(name.substr(0, name.size() - suf.size()), i);
  }
  return std::nullopt;
}

bool is_frozen(const std::string& name) {
  if (name.size() < 4 || name[0] != '_' || name[1] != 'r') return false;
  std::size_t i = 2;
  while (i < name.size() && std::isdigit(static_cast<unsigned char>(name[i]))) ++i;
  return i > 2 && i < name.size() && name[i] == '_';
}

Span entry_span(const SourceEntry& e) {
  return std::visit([](const auto& x) { return x.span; }, e);
}

class Ingester {
 public:
  Ingester(std::shared_ptr<const Theory> source, std::shared_ptr<const Theory> target, const SkeletonOptions& o,
           const ReductionConfig& config)
      : source_(std::move(source)), target_(std::move(target)), options_(o), config_(config) {
    std::size_t n = o.kind == SkeletonKind::Relation ? o.arity : 1;
    for (std::size_t i = 1; i <= n; ++i) {
      Morphism m;
      m.name = source_->name() + morphism_suffix(o.kind, i);
      m.source = source_;
      m.target = target_;
      m.definition_suffix = morphism_suffix(o.kind, i);
      morphisms_.push_back(std::move(m));
    }
  }

  IngestResult run(const SourceFile& filled) {
    IngestResult out;
    out.helpers = Theory(target_->name() + "_helpers");
    TheoryChecker helpers(config_, *target_);
    for (const auto& e : filled.entries) {
      if (std::holds_alternative<Require>(e) || std::holds_alternative<Pragma>(e)) continue;
      try {
        entry(e, helpers, out);
      } catch (const UnknownConstant& ex) {
        error(out, "skeleton-unresolved", ex.what(), entry_span(e));
      } catch (const Error& ex) {
        error(out, "skeleton-invalid", ex.what(), entry_span(e));
      }
    }
    if (has_errors(out.diagnostics)) return out;
    out.extended = std::make_shared<const Theory>(helpers.theory());
    for (auto& m : morphisms_) m.target = out.extended;
    if (options_.kind == SkeletonKind::Morphism) {
      out.morphism = morphisms_.front();
    } else {
      out.relation = make_relation(source_->name() + "_lr", morphisms_, lr_assignment_);
    }
    return out;
  }

 private:
  static void error(IngestResult& out, std::string code, std::string msg, Span span) {
    out.diagnostics.push_back(Diagnostic{Severity::Error, std::move(code), std::move(msg), std::move(span), {}, {}});
  }

  void entry(const SourceEntry& e, TheoryChecker& helpers, IngestResult& out) {
    std::string name;
    Span span = entry_span(e);
    if (const auto* d = std::get_if<ConstantDecl>(&e)) {
      if (is_frozen(d->name)) return;
      name = d->name;
    } else if (const auto* d = std::get_if<Definition>(&e)) {
      name = d->name;
    }
    if (!name.empty()) {
      if (auto g = split_generated(name, options_)) {
        const auto& [base, slot] = *g;
        if (source_->definition(base)) return;  // transported copy, regenerated
        if (!source_->is_primitive(base)) {
          error(out, "skeleton-unknown-entry", "'" + name + "' has no counterpart in " + source_->name(), span);
          return;
        }
        const auto* d = std::get_if<Definition>(&e);
        if (!d) {
          error(out, "skeleton-todo", "'" + name + "' is declared but not defined", span);
          return;
        }
        if (constants_of(d->body).count("TODO")) {
          error(out, "skeleton-todo", "'" + name + "' is still TODO", span);
          return;
        }
        Term type = parameter(*d, base, slot, out);
        Term value = resolve(d->body);
        try {
          value = annotate(value, resolve(type), helpers.theory());
        } catch (const UnknownConstant&) {
          // The type mentions a parameter filled in later; keep the value as written.
        }
        if (options_.kind == SkeletonKind::Relation && slot == 0) {
          lr_assignment_[base] = value;
        } else {
          morphisms_[slot - 1].assignment[base] = value;
        }
        return;
      }
    }
    Entry helper = to_entry(e);
    if (auto* d = std::get_if<ConstantDecl>(&helper)) d->type = resolve(d->type);
    if (auto* d = std::get_if<Definition>(&helper)) {
      d->type = resolve(d->type);
      d->body = resolve(d->body);
    }
    if (auto* r = std::get_if<RewriteRule>(&helper)) {
      r->lhs = resolve(r->lhs);
      r->rhs = resolve(r->rhs);
    }
    auto ds = helpers.add(helper);
    for (auto& d : ds) {
      if (d.span.file.empty()) d.span = span;
      out.diagnostics.push_back(d);
    }
    if (!has_errors(ds)) out.helpers.add(helper);
  }

  // Fills in the missing domains of the leading abstractions of a value from
  // its expected type. Inlined values can then be inferred wherever they
  // are applied, not only checked against a known type.
  Term annotate(const Term& value, const Term& type, const Theory& theory) const {
    if (!value.is(TermKind::Lam)) return value;
    Term ty;
    try {
      ty = Reducer(theory, config_).whnf(type);
    } catch (const FuelExhausted&) {
      return value;
    }
    if (!ty.is(TermKind::Pi)) return value;
    std::string x = fresh_name(value.name());
    Term v = Term::free(x);
    Term body = annotate(instantiate(value.body(), v), instantiate(ty.body(), v), theory);
    return lam_over(x, value.name(), value.domain() ? value.domain() : ty.domain(), body);
  }

  Term parameter(const Definition& d, const std::string& base, std::size_t slot, IngestResult& out) const {
    Term a = *source_->type_of(base);
    Term type;
    if (options_.kind == SkeletonKind::Morphism) {
      type = apply_morphism(suffix_morphism(*source_, "_mu"), a);
    } else {
      LogicalRelation lr = suffix_relation(*source_, options_.arity);
      Term c = Term::constant(base);
      if (slot > 0) {
        type = apply_morphism(lr.morphisms[slot - 1], a);
      } else {
        type = is_kind(a) ? translate_kind(lr, c, a) : related(lr, a, c);
      }
    }
    out.parameters.add_definition(Definition{d.name, type, d.body, false, d.span});
    return type;
  }

  static Entry to_entry(const SourceEntry& e) {
    if (const auto* d = std::get_if<ConstantDecl>(&e)) return *d;
    if (const auto* d = std::get_if<Definition>(&e)) return *d;
    return std::get<RewriteRule>(e);
  }

  LogicalRelation partial_relation() const {
    return make_relation(source_->name() + "_lr", morphisms_, lr_assignment_);
  }

  // Replaces references to generated names by what they stand for.
  Term resolve(const Term& t) const {
    switch (t.kind()) {
      case TermKind::Const: {
        auto g = split_generated(t.name(), options_);
        if (!g) return t;
        const auto& [base, slot] = *g;
        bool lr = options_.kind == SkeletonKind::Relation && slot == 0;
        if (const Definition* d = source_->definition(base)) {
          if (lr) return translate_term(partial_relation(), d->body);
          return resolve_definition(morphisms_[slot - 1], *d);
        }
        if (!source_->is_primitive(base)) return t;
        const auto& a = lr ? lr_assignment_ : morphisms_[slot - 1].assignment;
        auto it = a.find(base);
        if (it == a.end()) throw UnknownConstant(t.name());
        return it->second;
      }
      case TermKind::Lam:
        return Term::lam(t.name(), t.domain() ? resolve(t.domain()) : Term(), resolve(t.body()));
      case TermKind::Pi:
        return Term::pi(t.name(), resolve(t.domain()), resolve(t.body()));
      case TermKind::App:
        return Term::app(resolve(t.fun()), resolve(t.arg()));
      default:
        return t;
    }
  }

  // Inline image of a source definition under a partial assignment, with
  // nested definition references unfolded as well.
  Term resolve_definition(const Morphism& m, const Definition& d) const {
    std::function<Term(const Term&)> go = [&](const Term& t) -> Term {
      switch (t.kind()) {
        case TermKind::Const: {
          if (const Definition* inner = source_->definition(t.name())) return go(inner->body);
          auto it = m.assignment.find(t.name());
          if (it == m.assignment.end()) throw UnknownConstant(t.name() + m.definition_suffix);
          return it->second;
        }
        case TermKind::Lam:
          return Term::lam(t.name(), t.domain() ? go(t.domain()) : Term(), go(t.body()));
        case TermKind::Pi:
          return Term::pi(t.name(), go(t.domain()), go(t.body()));
        case TermKind::App:
          return Term::app(go(t.fun()), go(t.arg()));
        default:
          return t;
      }
    };
    return go(d.body);
  }

  std::shared_ptr<const Theory> source_;
  std::shared_ptr<const Theory> target_;
  const SkeletonOptions& options_;
  ReductionConfig config_;
  std::vector<Morphism> morphisms_;
  std::map<std::string, Term> lr_assignment_;
};

}  // namespace

std::string morphism_suffix(SkeletonKind kind, std::size_t i) {
  if (kind == SkeletonKind::Morphism) return "_mu";
  return i == 0 ? "_lr" : "_mu_" + std::to_string(i);
}

std::string generate_skeleton(const Theory& source, const Theory& target, const SkeletonOptions& options) {
  if (options.kind == SkeletonKind::Relation && options.arity == 0) throw Error("relation arity must be at least 1");
  return Generator(source, target, options).run();
}

IngestResult ingest_skeleton(const SourceFile& filled, std::shared_ptr<const Theory> source,
                             std::shared_ptr<const Theory> target, const SkeletonOptions& options,
                             const ReductionConfig& config) {
  return Ingester(std::move(source), std::move(target), options, config).run(filled);
}

MorphismReport check_skeleton(const IngestResult& ingested, const SkeletonOptions& options,
                              const ReductionConfig& config) {
  if (!ingested.extended) throw Error("skeleton was not ingested successfully");
  const Theory& source = ingested.morphism ? *ingested.morphism->source : ingested.relation->source();
  MorphismReport report;
  TheoryChecker params(config, *ingested.extended);
  std::set<std::string> filled;
  for (const auto& e : ingested.parameters.entries()) {
    const auto& d = std::get<Definition>(e);
    filled.insert(d.name);
    ConditionResult r;
    r.condition = is_kind(d.type) ? 2 : 1;
    r.subject = d.name;
    r.span = d.span;
    for (const auto& diag : params.add(e)) {
      if (diag.severity != Severity::Error) continue;
      r.ok = false;
      r.fuel_exhausted = diag.code == "fuel-exhausted";
      r.message = diag.message;
      r.expected = diag.expected;
      r.actual = diag.actual;
      break;
    }
    report.constants.push_back(std::move(r));
  }
  auto missing = [&](const std::string& name, const Term& type, const Span& span) {
    if (filled.count(name)) return;
    ConditionResult r;
    r.condition = is_kind(type) ? 2 : 1;
    r.subject = name;
    r.ok = false;
    r.message = "no parameter assigned";
    r.span = span;
    report.constants.push_back(std::move(r));
  };
  auto base = std::make_shared<const Theory>(params.theory());
  MorphismReport rules;
  if (options.kind == SkeletonKind::Morphism) {
    Morphism m = suffix_morphism(source, "_mu");
    for (const auto& c : source.primitives()) missing(c + "_mu", *source.type_of(c), {});
    m.target = base;
    rules = check_morphism(m, config);
  } else {
    LogicalRelation lr = suffix_relation(source, options.arity);
    for (auto& m : lr.morphisms) m.target = base;
    for (const auto& c : source.primitives()) {
      for (std::size_t i = 1; i <= options.arity; ++i) {
        missing(c + morphism_suffix(SkeletonKind::Relation, i), *source.type_of(c), {});
      }
      missing(c + "_lr", *source.type_of(c), {});
    }
    for (const auto& m : lr.morphisms) {
      auto mr = check_morphism(m, config);
      rules.rules.insert(rules.rules.end(), mr.rules.begin(), mr.rules.end());
    }
    auto rr = check_relation(lr, config);
    rules.rules.insert(rules.rules.end(), rr.rules.begin(), rr.rules.end());
  }
  // Constant conditions of the suffix morphisms hold by construction (a
  // failed parameter is still declared in `base`); only rules are taken.
  report.rules = std::move(rules.rules);
  return report;
}

Theory transport_skeleton(const IngestResult& ingested, const SkeletonOptions& options,
                          const ReductionConfig& config) {
  if (!ingested.extended) throw Error("skeleton was not ingested successfully");
  const Theory& source = ingested.morphism ? *ingested.morphism->source : ingested.relation->source();
  Theory out(ingested.extended->name() + "_transport");
  // Helpers and parameters only support transported definitions.
  if (source.definitions().empty()) return out;
  out.append(ingested.helpers);
  TheoryChecker params(config, *ingested.extended);
  for (const auto& e : ingested.parameters.entries()) {
    auto ds = params.add(e);
    if (has_errors(ds)) {
      throw InternalError("parameter '" + std::get<Definition>(e).name + "' does not check: " + ds.front().message);
    }
    out.add(e);
  }
  auto base = std::make_shared<const Theory>(params.theory());
  Theory fragment;
  if (options.kind == SkeletonKind::Morphism) {
    Morphism m = suffix_morphism(source, "_mu");
    m.target = base;
    fragment = transport_definitions(m, "_mu", config);
  } else {
    LogicalRelation lr = suffix_relation(source, options.arity);
    for (auto& m : lr.morphisms) m.target = base;
    fragment = transport_relation(lr, config);
  }
  out.append(fragment);
  return out;
}

std::string render_transport(const std::string& target_module, const Theory& transported) {
  if (transported.empty()) return "";
  return "#REQUIRE " + target_module + ".\n\n" + render_theory(transported);
}

}  // namespace lpmr
