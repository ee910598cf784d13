#include "lpmr/morphism.hpp"

#include <algorithm>

#include "lpmr/error.hpp"
#include "lpmr/printer.hpp"
#include "lpmr/typecheck.hpp"

namespace lpmr {

bool MorphismReport::ok() const {
  auto good = [](const ConditionResult& r) { return r.ok; };
  return std::all_of(constants.begin(), constants.end(), good) && std::all_of(rules.begin(), rules.end(), good);
}

std::size_t MorphismReport::failures(int condition) const {
  std::size_t n = 0;
  for (const auto* r : failed()) n += r->condition == condition;
  return n;
}

std::vector<const ConditionResult*> MorphismReport::failed() const {
  std::vector<const ConditionResult*> out;
  for (const auto& r : constants) if (!r.ok) out.push_back(&r);
  for (const auto& r : rules) if (!r.ok) out.push_back(&r);
  return out;
}

std::vector<Diagnostic> MorphismReport::diagnostics() const {
  std::vector<Diagnostic> out;
  for (const auto* r : failed()) {
    std::string code = r->fuel_exhausted ? "fuel-exhausted" : "condition-" + std::to_string(r->condition);
    out.push_back(Diagnostic{Severity::Error, code, r->subject + ": " + r->message, r->span, r->expected, r->actual});
  }
  return out;
}

Morphism identity_morphism(std::shared_ptr<const Theory> theory) {
  Morphism m;
  m.name = "id_" + theory->name();
  m.source = theory;
  m.target = theory;
  m.definition_suffix = "";
  for (const auto& c : theory->primitives()) m.assignment.emplace(c, Term::constant(c));
  return m;
}

Term apply_morphism(const Morphism& m, const Term& t) {
  switch (t.kind()) {
    case TermKind::Const: {
      auto it = m.assignment.find(t.name());
      if (it != m.assignment.end()) return it->second;
      if (m.source && m.source->definition(t.name())) return Term::constant(t.name() + m.definition_suffix);
      throw UnknownConstant(t.name());
    }
    case TermKind::Lam:
      return Term::lam(t.name(), t.domain() ? apply_morphism(m, t.domain()) : Term(), apply_morphism(m, t.body()));
    case TermKind::Pi:
      return Term::pi(t.name(), apply_morphism(m, t.domain()), apply_morphism(m, t.body()));
    case TermKind::App:
      return Term::app(apply_morphism(m, t.fun()), apply_morphism(m, t.arg()));
    default:
      return t;
  }
}

Context apply_morphism_ctx(const Morphism& m, const Context& ctx) {
  Context out;
  for (const auto& b : ctx) out.push(b.name, apply_morphism(m, b.type));
  return out;
}

Substitution apply_morphism_subst(const Morphism& m, const Substitution& theta) {
  Substitution out;
  for (const auto& [k, v] : theta) out.bind(k, apply_morphism(m, v));
  return out;
}

namespace {

void add_transported(Theory& target, const Morphism& m, const Definition& d) {
  std::string name = d.name + m.definition_suffix;
  if (m.definition_suffix.empty() && target.contains(name)) return;
  target.add_definition(Definition{name, apply_morphism(m, d.type), apply_morphism(m, d.body), d.opaque, d.span});
}

}  // namespace

Theory extended_target(const Morphism& m) {
  Theory t = *m.target;
  for (const Definition* d : m.source->definitions()) add_transported(t, m, *d);
  return t;
}

MorphismReport check_morphism(const Morphism& m, const ReductionConfig& config) {
  MorphismReport report;
  Theory target = *m.target;
  for (const auto& entry : m.source->entries()) {
    if (const auto* d = std::get_if<ConstantDecl>(&entry)) {
      ConditionResult r;
      r.condition = is_kind(d->type) ? 2 : 1;
      r.subject = d->name;
      r.span = d->span;
      auto it = m.assignment.find(d->name);
      if (it == m.assignment.end()) {
        r.ok = false;
        r.message = "no image assigned";
      } else {
        try {
          Term expected = apply_morphism(m, d->type);
          check(target, Context(), it->second, expected, config);
        } catch (const TypeError& e) {
          r.ok = false;
          r.message = e.what();
          r.expected = e.expected();
          r.actual = e.actual();
        } catch (const FuelExhausted& e) {
          r.ok = false;
          r.fuel_exhausted = true;
          r.message = e.what();
        } catch (const UnknownConstant& e) {
          r.ok = false;
          r.message = e.what();
        }
      }
      report.constants.push_back(std::move(r));
    } else if (const auto* rule = std::get_if<RewriteRule>(&entry)) {
      ConditionResult r;
      r.condition = 3;
      Term l = rule->delinearized_lhs();
      Term rhs = rule->delinearized_rhs();
      r.subject = pretty(l) + " --> " + pretty(rhs);
      r.span = rule->span;
      try {
        Term ml = apply_morphism(m, l);
        Term mr = apply_morphism(m, rhs);
        Reducer red(target, config);
        if (!red.convertible(ml, mr)) {
          r.ok = false;
          r.message = "images of the rule sides are not convertible";
          r.expected = normalize(target, ml, config);
          r.actual = normalize(target, mr, config);
        }
      } catch (const FuelExhausted& e) {
        r.ok = false;
        r.fuel_exhausted = true;
        r.message = e.what();
      } catch (const UnknownConstant& e) {
        r.ok = false;
        r.message = e.what();
      }
      report.rules.push_back(std::move(r));
    } else {
      const auto& d = std::get<Definition>(entry);
      try {
        add_transported(target, m, d);
      } catch (const UnknownConstant& e) {
        ConditionResult r;
        r.condition = 1;
        r.subject = d.name;
        r.ok = false;
        r.message = e.what();
        r.span = d.span;
        report.constants.push_back(std::move(r));
      }
    }
  }
  return report;
}

namespace {

Term unfold_definitions(const Theory& theory, const Term& t) {
  switch (t.kind()) {
    case TermKind::Const: {
      if (const Definition* d = theory.definition(t.name())) {
        if (d->opaque) {
          throw Error("cannot compose through opaque definition '" + t.name() + "'");
        }
        return unfold_definitions(theory, d->body);
      }
      return t;
    }
    case TermKind::Lam:
      return Term::lam(t.name(), t.domain() ? unfold_definitions(theory, t.domain()) : Term(),
                       unfold_definitions(theory, t.body()));
    case TermKind::Pi:
      return Term::pi(t.name(), unfold_definitions(theory, t.domain()), unfold_definitions(theory, t.body()));
    case TermKind::App:
      return Term::app(unfold_definitions(theory, t.fun()), unfold_definitions(theory, t.arg()));
    default:
      return t;
  }
}

}  // namespace

Morphism compose_morphisms(const Morphism& m1, const Morphism& m2) {
  if (m1.target != m2.source && (!m1.target || !m2.source || m1.target->name() != m2.source->name())) {
    throw Error("cannot compose " + m1.name + " and " + m2.name + ": theory mismatch");
  }
  Morphism out;
  out.name = m1.name + ";" + m2.name;
  out.source = m1.source;
  out.target = m2.target;
  out.definition_suffix = m1.definition_suffix.empty() ? m2.definition_suffix : m1.definition_suffix;
  for (const auto& [c, img] : m1.assignment) {
    out.assignment.emplace(c, apply_morphism(m2, unfold_definitions(*m1.target, img)));
  }
  return out;
}

Theory transport_definitions(const Morphism& m, const std::string& suffix, const ReductionConfig& config) {
  Morphism renamed = m;
  renamed.definition_suffix = suffix;
  Theory fragment(m.target->name() + suffix);
  TheoryChecker checker(config, *m.target);
  for (const Definition* d : m.source->definitions()) {
    std::string name = d->name + suffix;
    if (suffix.empty() && m.target->contains(name)) continue;
    Definition out{name, apply_morphism(renamed, d->type), apply_morphism(renamed, d->body), d->opaque, d->span};
    auto ds = checker.add(out);
    if (has_errors(ds)) {
      std::string msg = "transported definition '" + name + "' does not check: " + ds.front().message;
      throw InternalError(msg);
    }
    fragment.add_definition(out);
  }
  return fragment;
}

}  // namespace lpmr
