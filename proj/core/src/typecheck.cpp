#include "lpmr/typecheck.hpp"

#include <algorithm>
#include <optional>

#include "lpmr/error.hpp"
#include "lpmr/printer.hpp"

namespace lpmr {
namespace {

[[noreturn]] void mismatch(const std::string& what, const Term& expected, const Term& actual) {
  throw TypeError("type-mismatch", what + ": expected " + pretty(expected) + ", got " + pretty(actual),
                  expected, actual);
}

}  // namespace

Checker::Checker(const Theory& theory, ReductionConfig config) : theory_(theory), config_(config) {}

Term Checker::whnf(const Term& t) { return Reducer(theory_, config_).whnf(t); }

bool Checker::convertible(const Term& a, const Term& b) {
  return Reducer(theory_, config_).convertible(a, b);
}

Term Checker::infer(const Context& ctx, const Term& t) {
  Context local = ctx;
  return infer_open(local, t);
}

void Checker::check(const Context& ctx, const Term& t, const Term& expected) {
  Context local = ctx;
  check_open(local, t, expected);
}

Term Checker::sort_of(Context& ctx, const Term& t) {
  if (t.is(TermKind::Kind)) return Term();
  Term s = whnf(infer_open(ctx, t));
  if (!s.is_sort()) return Term();
  return s;
}

Term Checker::check_classifier(const Context& ctx, const Term& t) {
  Context local = ctx;
  Term s = sort_of(local, t);
  if (!s) {
    throw TypeError("classifier-not-sort", pretty(t) + " is neither a type nor a kind");
  }
  return s;
}

void Checker::check_context(const Context& ctx) {
  Context prefix;
  for (const auto& b : ctx) {
    if (prefix.contains(b.name)) throw TypeError("duplicate-name", "variable '" + b.name + "' bound twice");
    Term s = sort_of(prefix, b.type);
    if (!s || !s.is(TermKind::Type)) {
      throw TypeError("not-a-type", "type of '" + b.name + "' is not a type: " + pretty(b.type));
    }
    prefix.push(b.name, b.type);
  }
}

Term Checker::infer_open(Context& ctx, const Term& t) {
  switch (t.kind()) {
    case TermKind::Type:
      return Term::kind_sort();
    case TermKind::Kind:
      throw TypeError("kind-untyped", "Kind has no classifier");
    case TermKind::Const: {
      const Term* ty = theory_.type_of(t.name());
      if (!ty) throw TypeError("unknown-constant", "unknown constant '" + t.name() + "'");
      return *ty;
    }
    case TermKind::Free: {
      const Term* ty = ctx.lookup(t.name());
      if (!ty) throw TypeError("unbound-variable", "unbound variable '" + t.name() + "'");
      return *ty;
    }
    case TermKind::Bound:
      throw InternalError("loose bound variable during inference");
    case TermKind::Pi: {
      Term ds = sort_of(ctx, t.domain());
      if (!ds || !ds.is(TermKind::Type)) {
        throw TypeError("not-a-type", "domain of product is not a type: " + pretty(t.domain()));
      }
      std::string x = fresh_name(t.name());
      ctx.push(x, t.domain());
      Term body = instantiate(t.body(), Term::free(x));
      Term bs = sort_of(ctx, body);
      ctx.pop();
      if (!bs) throw TypeError("ill-sorted", "codomain of product is neither a type nor a kind: " + pretty(body));
      return bs;
    }
    case TermKind::Lam: {
      if (!t.domain()) {
        throw TypeError("cannot-infer", "cannot infer the type of an unannotated abstraction " + pretty(t));
      }
      Term ds = sort_of(ctx, t.domain());
      if (!ds || !ds.is(TermKind::Type)) {
        throw TypeError("not-a-type", "domain of abstraction is not a type: " + pretty(t.domain()));
      }
      std::string x = fresh_name(t.name());
      ctx.push(x, t.domain());
      Term body_ty = infer_open(ctx, instantiate(t.body(), Term::free(x)));
      if (body_ty.is(TermKind::Kind)) {
        ctx.pop();
        throw TypeError("ill-sorted", "abstraction body is a kind");
      }
      Term bs = sort_of(ctx, body_ty);
      ctx.pop();
      if (!bs) throw TypeError("ill-sorted", "body type is neither a type nor a kind: " + pretty(body_ty));
      return pi_over(x, t.name(), t.domain(), body_ty);
    }
    case TermKind::App: {
      if (auto [head, args] = spine(t); head.is(TermKind::Lam) && !head.domain()) {
        // (x => b) a c..: typed like a local definition, b[a/x] c.. once a is
        // known to be well typed. Covers curried heads x => y => b. An
        // unannotated abstraction a has no inferable type; it is checked
        // where it lands, so it must land somewhere.
        const Term& a = args[0];
        if (a.is(TermKind::Lam) && !a.domain()) {
          std::string probe = fresh_name(head.name());
          if (!free_vars(instantiate(head.body(), Term::free(probe))).count(probe)) {
            throw TypeError("cannot-infer", "cannot infer the type of the discarded argument " + pretty(a));
          }
        } else {
          infer_open(ctx, a);
        }
        Term reduct = instantiate(head.body(), a);
        for (std::size_t i = 1; i < args.size(); ++i) reduct = Term::app(reduct, args[i]);
        return infer_open(ctx, reduct);
      }
      Term ft = whnf(infer_open(ctx, t.fun()));
      if (!ft.is(TermKind::Pi)) {
        throw TypeError("not-a-product",
                        "cannot apply " + pretty(t.fun()) + " of type " + pretty(ft) + " to " + pretty(t.arg()),
                        Term(), ft);
      }
      check_open(ctx, t.arg(), ft.domain());
      return instantiate(ft.body(), t.arg());
    }
  }
  throw InternalError("unreachable term kind");
}

void Checker::check_open(Context& ctx, const Term& t, const Term& expected) {
  if (t.is(TermKind::Lam)) {
    Term e = whnf(expected);
    if (e.is(TermKind::Pi)) {
      Term dom = e.domain();
      if (t.domain()) {
        Term ds = sort_of(ctx, t.domain());
        if (!ds || !ds.is(TermKind::Type)) {
          throw TypeError("not-a-type", "domain of abstraction is not a type: " + pretty(t.domain()));
        }
        if (!convertible(t.domain(), e.domain())) {
          mismatch("abstraction domain", e.domain(), t.domain());
        }
        dom = t.domain();
      }
      std::string x = fresh_name(t.name());
      Term v = Term::free(x);
      ctx.push(x, dom);
      check_open(ctx, instantiate(t.body(), v), instantiate(e.body(), v));
      ctx.pop();
      return;
    }
    if (!t.domain()) {
      throw TypeError("type-mismatch", "abstraction checked against non-product " + pretty(e), e, Term());
    }
  }
  Term actual = infer_open(ctx, t);
  if (!convertible(actual, expected)) {
    mismatch("classifier of " + pretty(t), whnf(expected), whnf(actual));
  }
}

Term infer(const Theory& theory, const Context& ctx, const Term& t, const ReductionConfig& config) {
  return Checker(theory, config).infer(ctx, t);
}

void check(const Theory& theory, const Context& ctx, const Term& t, const Term& expected,
           const ReductionConfig& config) {
  Checker(theory, config).check(ctx, t, expected);
}

// ---------------------------------------------------------------------------
// Rewrite rules

namespace {

bool is_pattern_var(const Term& t, const std::vector<std::string>& vars) {
  return t.is(TermKind::Free) && std::find(vars.begin(), vars.end(), t.name()) != vars.end();
}

// Algebraic: a pattern variable, or a constant applied to algebraic terms.
bool algebraic(const Term& t, const std::vector<std::string>& vars) {
  if (is_pattern_var(t, vars)) return true;
  auto [head, args] = spine(t);
  if (!head.is(TermKind::Const)) return false;
  return std::all_of(args.begin(), args.end(), [&](const Term& a) { return algebraic(a, vars); });
}

struct Mismatch {
  Term expected;
  Term actual;
};

// Infers a context for the pattern variables of an algebraic term,
// left to right, outside in. Returns the term's type.
class PatternTyper {
 public:
  PatternTyper(Checker& ck, const std::vector<std::string>& vars) : ck_(ck), vars_(vars) {}

  Context ctx;
  std::vector<Mismatch> mismatches;
  std::vector<std::string> order;  // first-occurrence order

  Term type_of(const Term& t) {
    auto [head, args] = spine(t);
    Term ty = ck_.infer(ctx, head);
    for (const Term& a : args) {
      Term w = ck_.whnf(ty);
      if (!w.is(TermKind::Pi)) {
        throw TypeError("not-a-product", "too many arguments in pattern " + pretty(t), Term(), w);
      }
      expect(a, w.domain());
      ty = instantiate(w.body(), a);
    }
    return ty;
  }

 private:
  void expect(const Term& a, const Term& dom) {
    if (is_pattern_var(a, vars_)) {
      if (const Term* prev = ctx.lookup(a.name())) {
        if (!ck_.convertible(*prev, dom)) mismatches.push_back({dom, *prev});
      } else {
        ctx.push(a.name(), dom);
        order.push_back(a.name());
      }
      return;
    }
    Term actual = type_of(a);
    if (!ck_.convertible(actual, dom)) mismatches.push_back({dom, actual});
  }

  Checker& ck_;
  const std::vector<std::string>& vars_;
};

class Identifier {
 public:
  Identifier(const std::vector<std::string>& order) : order_(order) {}

  Substitution result;

  bool unify(const Term& a, const Term& b) {
    Term x = resolve(a);
    Term y = resolve(b);
    if (alpha_eq(x, y)) return true;
    if (var(x) && var(y)) {
      // The later variable is identified with the earlier one.
      if (rank(x) < rank(y)) std::swap(x, y);
      for (auto& [k, v] : entries_) {
        if (v.is(TermKind::Free) && v.name() == x.name()) v = y;
      }
      entries_.emplace_back(x.name(), y);
      return true;
    }
    if (x.kind() != y.kind()) return false;
    switch (x.kind()) {
      case TermKind::App:
        return unify(x.fun(), y.fun()) && unify(x.arg(), y.arg());
      case TermKind::Pi:
      case TermKind::Lam:
        if (static_cast<bool>(x.domain()) != static_cast<bool>(y.domain())) return false;
        if (x.domain() && !unify(x.domain(), y.domain())) return false;
        return unify(x.body(), y.body());
      default:
        return false;
    }
  }

  Substitution build() const {
    Substitution s;
    for (const auto& [k, v] : entries_) s.bind(k, v);
    return s;
  }

 private:
  bool var(const Term& t) const {
    return t.is(TermKind::Free) && std::find(order_.begin(), order_.end(), t.name()) != order_.end();
  }
  std::size_t rank(const Term& t) const {
    return static_cast<std::size_t>(std::find(order_.begin(), order_.end(), t.name()) - order_.begin());
  }
  Term resolve(const Term& t) const { return subst(t, build()); }

  const std::vector<std::string>& order_;
  std::vector<std::pair<std::string, Term>> entries_;
};

Diagnostic make_diag(Severity sev, const std::string& code, const std::string& msg, const Span& span,
                     Term expected = {}, Term actual = {}) {
  return Diagnostic{sev, code, msg, span, std::move(expected), std::move(actual)};
}

// Types the rule strictly: no mismatch is tolerated. Returns the context.
std::optional<Context> type_rule_strictly(Checker& ck, const std::vector<std::string>& vars, const Term& lhs,
                                          const Term& rhs, std::vector<Mismatch>* mismatches,
                                          std::vector<std::string>* order) {
  PatternTyper pt(ck, vars);
  Term lty = pt.type_of(lhs);
  if (!pt.mismatches.empty()) {
    if (mismatches) *mismatches = pt.mismatches;
    if (order) *order = pt.order;
    return std::nullopt;
  }
  ck.check_context(pt.ctx);
  ck.check(pt.ctx, lhs, lty);
  ck.check(pt.ctx, rhs, lty);
  return pt.ctx;
}

}  // namespace

std::vector<Diagnostic> check_rule(const Theory& theory, RewriteRule& rule, const ReductionConfig& config) {
  std::vector<Diagnostic> out;
  const Span& sp = rule.span;
  const auto& vars = rule.pattern_vars;
  if (is_pattern_var(rule.lhs, vars) || rule.lhs.is(TermKind::Free)) {
    out.push_back(make_diag(Severity::Error, "rule-lhs-variable",
                            "left-hand side " + pretty(rule.lhs) + " is a variable", sp));
    return out;
  }
  if (!algebraic(rule.lhs, vars)) {
    out.push_back(make_diag(Severity::Error, "rule-lhs-not-algebraic",
                            "left-hand side " + pretty(rule.lhs) +
                                " is not a constant applied to algebraic arguments",
                            sp));
    return out;
  }
  for (const auto& v : free_vars(rule.lhs)) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
      out.push_back(make_diag(Severity::Error, "rule-lhs-not-algebraic", "unlisted variable '" + v + "' in lhs", sp));
      return out;
    }
  }
  auto lhs_vars = free_vars(rule.lhs);
  for (const auto& v : free_vars(rule.rhs)) {
    if (!lhs_vars.count(v)) {
      out.push_back(make_diag(Severity::Error, "rule-rhs-fresh-var",
                              "variable '" + v + "' of the right-hand side does not occur in the left-hand side", sp));
      return out;
    }
  }
  std::string head = rule.head();
  if (!theory.contains(head)) {
    out.push_back(make_diag(Severity::Error, "unknown-constant", "unknown constant '" + head + "'", sp));
    return out;
  }
  if (rule.unchecked) {
    out.push_back(make_diag(Severity::Warning, "rule-unchecked",
                            "typing of rule " + pretty(rule.lhs) + " --> " + pretty(rule.rhs) + " skipped", sp));
    return out;
  }

  Checker ck(theory, config);
  try {
    std::vector<Mismatch> mism;
    std::vector<std::string> order;
    auto ctx = type_rule_strictly(ck, vars, rule.lhs, rule.rhs, &mism, &order);
    if (ctx) {
      rule.context = *ctx;
      rule.identification = Substitution();
      return out;
    }
    Identifier id(order);
    for (const auto& m : mism) {
      Term e = Reducer(theory, config).normalize(m.expected);
      Term a = Reducer(theory, config).normalize(m.actual);
      if (!id.unify(e, a)) {
        out.push_back(make_diag(Severity::Error, "rule-ill-typed",
                                "left-hand side " + pretty(rule.lhs) + " is ill-typed", sp, e, a));
        return out;
      }
    }
    Substitution ident = id.build();
    std::string names;
    for (const auto& [k, v] : ident) {
      if (!names.empty()) names += ", ";
      names += k + " = " + pretty(v);
    }
    out.push_back(make_diag(Severity::Warning, "rule-linearized",
                            "left-hand side is ill-typed as written; checked the rule with " + names, sp));
    std::vector<std::string> kept;
    for (const auto& v : vars) {
      if (!ident.find(v)) kept.push_back(v);
    }
    std::vector<Mismatch> again;
    auto ctx2 = type_rule_strictly(ck, kept, subst(rule.lhs, ident), subst(rule.rhs, ident), &again, nullptr);
    if (!ctx2) {
      out.push_back(make_diag(Severity::Error, "rule-ill-typed", "de-linearized left-hand side is ill-typed", sp,
                              again.front().expected, again.front().actual));
      return out;
    }
    rule.context = *ctx2;
    rule.identification = ident;
  } catch (const TypeError& e) {
    out.push_back(make_diag(Severity::Error, "rule-ill-typed",
                            "rule " + pretty(rule.lhs) + " --> " + pretty(rule.rhs) + ": " + e.what(), sp,
                            e.expected(), e.actual()));
  } catch (const FuelExhausted& e) {
    out.push_back(make_diag(Severity::Error, "fuel-exhausted", e.what(), sp));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Theories

TheoryChecker::TheoryChecker(ReductionConfig config, Theory base)
    : config_(config), theory_(std::move(base)) {}

std::vector<Diagnostic> TheoryChecker::add(const Entry& entry) {
  std::vector<Diagnostic> out;
  auto fail = [&](const Span& sp, const std::string& code, const std::string& msg, Term e = {}, Term a = {}) {
    out.push_back(make_diag(Severity::Error, code, msg, sp, std::move(e), std::move(a)));
  };
  if (const auto* d = std::get_if<ConstantDecl>(&entry)) {
    if (theory_.contains(d->name)) {
      fail(d->span, "duplicate-name", "constant '" + d->name + "' is already declared");
      return out;
    }
    try {
      Checker(theory_, config_).check_classifier(Context(), d->type);
    } catch (const TypeError& e) {
      fail(d->span, e.code(), "declaration of '" + d->name + "': " + e.what(), e.expected(), e.actual());
    } catch (const FuelExhausted& e) {
      fail(d->span, "fuel-exhausted", e.what());
    }
    // Keep the name so later entries do not cascade into unknown-constant errors.
    theory_.add_constant(*d);
    return out;
  }
  if (const auto* r = std::get_if<RewriteRule>(&entry)) {
    RewriteRule rule = *r;
    out = check_rule(theory_, rule, config_);
    if (!has_errors(out)) theory_.add_rule(rule);
    return out;
  }
  const auto& def = std::get<Definition>(entry);
  if (theory_.contains(def.name)) {
    fail(def.span, "duplicate-name", "constant '" + def.name + "' is already declared");
    return out;
  }
  bool ok = true;
  try {
    Checker ck(theory_, config_);
    ck.check_classifier(Context(), def.type);
    ck.check(Context(), def.body, def.type);
  } catch (const TypeError& e) {
    ok = false;
    fail(def.span, e.code(), "definition of '" + def.name + "': " + e.what(), e.expected(), e.actual());
  } catch (const FuelExhausted& e) {
    ok = false;
    fail(def.span, "fuel-exhausted", e.what());
  }
  if (ok) {
    theory_.add_definition(def);
  } else {
    theory_.add_constant(ConstantDecl{def.name, def.type, def.span});
  }
  return out;
}

std::vector<Diagnostic> check_theory(const Theory& theory, const ReductionConfig& config) {
  TheoryChecker tc(config, Theory(theory.name()));
  std::vector<Diagnostic> out;
  for (const auto& e : theory.entries()) {
    auto ds = tc.add(e);
    out.insert(out.end(), ds.begin(), ds.end());
  }
  return out;
}

}  // namespace lpmr
