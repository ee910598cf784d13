#include "lpmr/relation.hpp"

#include "lpmr/error.hpp"
#include "lpmr/printer.hpp"
#include "lpmr/typecheck.hpp"

namespace lpmr {

std::string copy_name(const std::string& x, std::size_t i) { return x + "%" + std::to_string(i); }
std::string star_name(const std::string& x) { return x + "%s"; }

namespace {

std::string hint_copy(const std::string& x, std::size_t i) { return copy_name(base_name(x), i); }
std::string hint_star(const std::string& x) { return star_name(base_name(x)); }

class Translator {
 public:
  explicit Translator(const LogicalRelation& lr) : lr_(lr) {}

  Term image(std::size_t i, const Term& t) const {
    Term mt = apply_morphism(lr_.morphisms[i - 1], t);
    Substitution ren;
    for (const auto& x : free_vars(t)) ren.bind(x, Term::free(copy_name(x, i)));
    return subst(mt, ren);
  }

  Term term(const Term& t) const {
    switch (t.kind()) {
      case TermKind::Free:
        return Term::free(star_name(t.name()));
      case TermKind::Const: {
        auto it = lr_.assignment.find(t.name());
        if (it != lr_.assignment.end()) return it->second;
        if (lr_.source().definition(t.name())) return Term::constant(t.name() + lr_.definition_suffix);
        throw UnknownConstant(t.name());
      }
      case TermKind::App: {
        std::vector<Term> args;
        for (std::size_t i = 1; i <= n(); ++i) args.push_back(image(i, t.arg()));
        args.push_back(term(t.arg()));
        return Term::app(term(t.fun()), args);
      }
      case TermKind::Lam: {
        std::string y = fresh_name(t.name());
        Term body = term(instantiate(t.body(), Term::free(y)));
        Term dom_star = t.domain() ? related_vars(t.domain(), y) : Term();
        Term out = lam_over(star_name(y), hint_star(t.name()), dom_star, body);
        for (std::size_t i = n(); i >= 1; --i) {
          out = lam_over(copy_name(y, i), hint_copy(t.name(), i), t.domain() ? image(i, t.domain()) : Term(), out);
        }
        return out;
      }
      case TermKind::Pi: {
        std::string f = fresh_name("f");
        std::string y = fresh_name(t.name());
        Term vy = Term::free(y);
        std::vector<Term> applied;
        for (std::size_t i = 1; i <= n(); ++i) {
          applied.push_back(Term::app(Term::free(copy_name(f, i)), Term::free(copy_name(y, i))));
        }
        Term out = Term::app(term(instantiate(t.body(), vy)), applied);
        out = pi_over(star_name(y), hint_star(t.name()), related_vars(t.domain(), y), out);
        for (std::size_t i = n(); i >= 1; --i) out = pi_over(copy_name(y, i), hint_copy(t.name(), i), image(i, t.domain()), out);
        for (std::size_t i = n(); i >= 1; --i) out = lam_over(copy_name(f, i), hint_copy("f", i), image(i, t), out);
        return out;
      }
      case TermKind::Type:
      case TermKind::Kind:
        throw Error("relational translation of a sort; use translate_kind for kinds");
      case TermKind::Bound:
        throw InternalError("loose bound variable in relational translation");
    }
    throw InternalError("unreachable term kind");
  }

  Term kind(const Term& family, const Term& k) const {
    if (k.is(TermKind::Type)) {
      Term out = Term::type_sort();
      for (std::size_t i = n(); i >= 1; --i) out = arrow(image(i, family), out);
      return out;
    }
    if (!k.is(TermKind::Pi)) throw Error("not a kind: " + pretty(k));
    std::string y = fresh_name(k.name());
    Term vy = Term::free(y);
    Term out = kind(Term::app(family, vy), instantiate(k.body(), vy));
    out = pi_over(star_name(y), hint_star(k.name()), related_vars(k.domain(), y), out);
    for (std::size_t i = n(); i >= 1; --i) out = pi_over(copy_name(y, i), hint_copy(k.name(), i), image(i, k.domain()), out);
    return out;
  }

  // lr(A) y%1 ... y%n
  Term related_vars(const Term& a, const std::string& y) const {
    std::vector<Term> args;
    for (std::size_t i = 1; i <= n(); ++i) args.push_back(Term::free(copy_name(y, i)));
    return Term::app(term(a), args);
  }

  Term related_term(const Term& a, const Term& m) const {
    std::vector<Term> args;
    for (std::size_t i = 1; i <= n(); ++i) args.push_back(image(i, m));
    return Term::app(term(a), args);
  }

  std::size_t n() const { return lr_.arity(); }

 private:
  const LogicalRelation& lr_;
};

void add_definition_images(Theory& target, const LogicalRelation& lr, const Definition& d) {
  Translator tr(lr);
  // The copies stay transparent even for a theorem: the type of d_lr relates
  // them, and only their bodies make that statement provable.
  for (std::size_t i = 1; i <= lr.arity(); ++i) {
    const auto& m = lr.morphisms[i - 1];
    target.add_definition(Definition{d.name + m.definition_suffix, apply_morphism(m, d.type),
                                     apply_morphism(m, d.body), false, d.span});
  }
  Term ty = is_kind(d.type) ? tr.kind(Term::constant(d.name), d.type) : tr.related_term(d.type, Term::constant(d.name));
  target.add_definition(Definition{d.name + lr.definition_suffix, ty, tr.term(d.body), d.opaque, d.span});
}

}  // namespace

LogicalRelation make_relation(std::string name, std::vector<Morphism> morphisms,
                              std::map<std::string, Term> assignment) {
  if (morphisms.empty()) throw Error("a logical relation needs at least one morphism");
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    const auto& m = morphisms[i];
    if (m.source->name() != morphisms[0].source->name() || m.target->name() != morphisms[0].target->name()) {
      throw Error("morphisms of relation " + name + " do not share source and target");
    }
    morphisms[i].definition_suffix = "_mu_" + std::to_string(i + 1);
  }
  LogicalRelation lr;
  lr.name = std::move(name);
  lr.morphisms = std::move(morphisms);
  lr.assignment = std::move(assignment);
  return lr;
}

Term relation_image(const LogicalRelation& lr, std::size_t i, const Term& t) { return Translator(lr).image(i, t); }

Term translate_term(const LogicalRelation& lr, const Term& t) { return Translator(lr).term(t); }

Term translate_kind(const LogicalRelation& lr, const Term& family, const Term& kind) {
  return Translator(lr).kind(family, kind);
}

Context translate_context(const LogicalRelation& lr, const Context& ctx) {
  Translator tr(lr);
  Context out;
  for (const auto& b : ctx) {
    for (std::size_t i = 1; i <= lr.arity(); ++i) out.push(copy_name(b.name, i), tr.image(i, b.type));
    out.push(star_name(b.name), tr.related_vars(b.type, b.name));
  }
  return out;
}

Term related(const LogicalRelation& lr, const Term& type, const Term& m) {
  return Translator(lr).related_term(type, m);
}

Theory extended_target(const LogicalRelation& lr) {
  Theory t = lr.target();
  for (const Definition* d : lr.source().definitions()) add_definition_images(t, lr, *d);
  return t;
}

MorphismReport check_relation(const LogicalRelation& lr, const ReductionConfig& config) {
  MorphismReport report;
  Translator tr(lr);
  Theory target = lr.target();
  auto guard = [&](ConditionResult& r, auto&& body) {
    try {
      body();
    } catch (const TypeError& e) {
      r.ok = false;
      r.message = e.what();
      r.expected = e.expected();
      r.actual = e.actual();
    } catch (const FuelExhausted& e) {
      r.ok = false;
      r.fuel_exhausted = true;
      r.message = e.what();
    } catch (const Error& e) {
      r.ok = false;
      r.message = e.what();
    }
  };
  for (const auto& entry : lr.source().entries()) {
    if (const auto* d = std::get_if<ConstantDecl>(&entry)) {
      ConditionResult r;
      bool family = is_kind(d->type);
      r.condition = family ? 2 : 1;
      r.subject = d->name;
      r.span = d->span;
      auto it = lr.assignment.find(d->name);
      if (it == lr.assignment.end()) {
        r.ok = false;
        r.message = "no relational image assigned";
      } else {
        guard(r, [&] {
          Term c = Term::constant(d->name);
          Term expected = family ? tr.kind(c, d->type) : tr.related_term(d->type, c);
          check(target, Context(), it->second, expected, config);
        });
      }
      report.constants.push_back(std::move(r));
    } else if (const auto* rule = std::get_if<RewriteRule>(&entry)) {
      ConditionResult r;
      r.condition = 3;
      Term l = rule->delinearized_lhs();
      Term rhs = rule->delinearized_rhs();
      r.subject = pretty(l) + " --> " + pretty(rhs);
      r.span = rule->span;
      guard(r, [&] {
        Term tl = tr.term(l);
        Term trr = tr.term(rhs);
        if (!Reducer(target, config).convertible(tl, trr)) {
          r.ok = false;
          r.message = "relational images of the rule sides are not convertible";
          r.expected = normalize(target, tl, config);
          r.actual = normalize(target, trr, config);
        }
      });
      report.rules.push_back(std::move(r));
    } else {
      const auto& d = std::get<Definition>(entry);
      ConditionResult r;
      r.condition = 1;
      r.subject = d.name;
      guard(r, [&] { add_definition_images(target, lr, d); });
      if (!r.ok) report.constants.push_back(std::move(r));
    }
  }
  return report;
}

Theory transport_relation(const LogicalRelation& lr, const ReductionConfig& config) {
  Theory images;
  for (const Definition* d : lr.source().definitions()) add_definition_images(images, lr, *d);
  Theory fragment(lr.target().name() + lr.definition_suffix);
  TheoryChecker checker(config, lr.target());
  for (const auto& e : images.entries()) {
    auto ds = checker.add(e);
    if (has_errors(ds)) {
      const auto& d = std::get<Definition>(e);
      throw InternalError("relational image '" + d.name + "' does not check: " + ds.front().message);
    }
    fragment.add(e);
  }
  return fragment;
}

}  // namespace lpmr
