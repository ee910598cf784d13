#include "lpmr/rewrite.hpp"

#include <algorithm>

#include "lpmr/error.hpp"

namespace lpmr {
namespace {

bool is_var(const std::string& name, const std::vector<std::string>& vars) {
  return std::find(vars.begin(), vars.end(), name) != vars.end();
}

Term rebuild(const Term& head, const std::vector<Term>& args, std::size_t from) {
  Term t = head;
  for (std::size_t i = from; i < args.size(); ++i) t = Term::app(t, args[i]);
  return t;
}

}  // namespace

Reducer::Reducer(const Theory& theory, ReductionConfig config) : theory_(theory), config_(config) {}

void Reducer::tick() {
  if (steps_ >= config_.fuel) throw FuelExhausted();
  ++steps_;
}

bool Reducer::match_into(const Term& pat, const Term& t, const std::vector<std::string>& vars,
                         Substitution& sigma) {
  if (pat.is(TermKind::Free) && is_var(pat.name(), vars)) {
    if (const Term* prev = sigma.find(pat.name())) return conv(*prev, t);
    sigma.bind(pat.name(), t);
    return true;
  }
  auto [phead, pargs] = spine(pat);
  auto try_spine = [&](const Term& term) -> std::optional<bool> {
    auto [head, args] = spine(term);
    bool same_head = head.kind() == phead.kind() &&
                     (head.is(TermKind::Const) || head.is(TermKind::Free)) &&
                     head.name() == phead.name();
    if (!same_head || args.size() != pargs.size()) return std::nullopt;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (!match_into(pargs[i], args[i], vars, sigma)) return false;
    }
    return true;
  };
  // Syntactic attempt first; a failure below the head may still succeed
  // once t is put in weak head normal form, so roll back and retry.
  Substitution saved = sigma;
  if (auto r = try_spine(t); r && *r) return true;
  sigma = saved;
  Term w = whnf(t);
  if (w.same_node(t)) return false;
  if (auto r = try_spine(w)) return *r;
  return false;
}

std::optional<Substitution> Reducer::match(const Term& lhs, const std::vector<std::string>& vars,
                                           const Term& t) {
  Substitution sigma;
  if (!match_into(lhs, t, vars, sigma)) return std::nullopt;
  return sigma;
}

std::optional<Term> Reducer::step(const Term& t) {
  auto [head, args] = spine(t);
  if (head.is(TermKind::Lam) && !args.empty()) {
    tick();
    return rebuild(instantiate(head.body(), args[0]), args, 1);
  }
  if (!head.is(TermKind::Const)) return std::nullopt;
  if (const Term* body = theory_.unfolding(head.name())) {
    tick();
    return rebuild(*body, args, 0);
  }
  for (const auto& rule : theory_.rules_for(head.name())) {
    auto [rhead, rargs] = spine(rule->lhs);
    std::size_t k = rargs.size();
    if (k > args.size()) continue;
    Substitution sigma;
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) ok = match_into(rargs[i], args[i], rule->pattern_vars, sigma);
    if (!ok) continue;
    tick();
    return rebuild(subst(rule->rhs, sigma), args, k);
  }
  return std::nullopt;
}

Term Reducer::whnf(const Term& t) {
  if (auto it = whnf_memo_.find(t); it != whnf_memo_.end()) return it->second;
  Term cur = t;
  while (auto next = step(cur)) cur = *next;
  whnf_memo_.emplace(t, cur);
  return cur;
}

Term Reducer::outermost(const Term& t) {
  Term w = whnf(t);
  switch (w.kind()) {
    case TermKind::Lam:
    case TermKind::Pi: {
      std::string x = fresh_name(w.name());
      Term dom = w.domain() ? outermost(w.domain()) : Term();
      Term body = outermost(instantiate(w.body(), Term::free(x)));
      return w.is(TermKind::Lam) ? lam_over(x, w.name(), dom, body) : pi_over(x, w.name(), dom, body);
    }
    case TermKind::App: {
      auto [head, args] = spine(w);
      for (auto& a : args) a = outermost(a);
      Term rebuilt = rebuild(head, args, 0);
      // Normal arguments can expose a nonlinear match that failed before.
      if (auto next = step(rebuilt)) return outermost(*next);
      return rebuilt;
    }
    default:
      return w;
  }
}

Term Reducer::innermost(const Term& t) {
  switch (t.kind()) {
    case TermKind::Lam:
    case TermKind::Pi: {
      std::string x = fresh_name(t.name());
      Term body = innermost(instantiate(t.body(), Term::free(x)));
      Term dom = t.domain() ? innermost(t.domain()) : Term();
      return t.is(TermKind::Lam) ? lam_over(x, t.name(), dom, body) : pi_over(x, t.name(), dom, body);
    }
    case TermKind::App:
    case TermKind::Const: {
      auto [head, args] = spine(t);
      for (auto it = args.rbegin(); it != args.rend(); ++it) *it = innermost(*it);
      if (!head.is(TermKind::Const)) head = innermost(head);
      Term rebuilt = rebuild(head, args, 0);
      if (auto next = step(rebuilt)) return innermost(*next);
      return rebuilt;
    }
    default:
      return t;
  }
}

Term Reducer::normalize(const Term& t, Strategy strategy) {
  return strategy == Strategy::Outermost ? outermost(t) : innermost(t);
}

bool Reducer::conv(const Term& t0, const Term& u0) {
  if (alpha_eq(t0, u0)) return true;
  Term t = whnf(t0);
  Term u = whnf(u0);
  if (alpha_eq(t, u)) return true;

  auto open_pair = [&](const Term& a, const Term& b) {
    Term x = Term::free(fresh_name(a.name()));
    return conv(instantiate(a.body(), x), instantiate(b.body(), x));
  };

  if (t.is(TermKind::Pi) && u.is(TermKind::Pi)) {
    return conv(t.domain(), u.domain()) && open_pair(t, u);
  }
  if (t.is(TermKind::Lam) && u.is(TermKind::Lam)) {
    if (!config_.eta && t.domain() && u.domain() && !conv(t.domain(), u.domain())) return false;
    return open_pair(t, u);
  }
  if (config_.eta && (t.is(TermKind::Lam) != u.is(TermKind::Lam))) {
    const Term& l = t.is(TermKind::Lam) ? t : u;
    const Term& o = t.is(TermKind::Lam) ? u : t;
    if (o.is_sort() || o.is(TermKind::Pi)) return false;
    Term x = Term::free(fresh_name(l.name()));
    return conv(instantiate(l.body(), x), Term::app(o, x));
  }

  auto [th, ta] = spine(t);
  auto [uh, ua] = spine(u);
  bool heads = th.kind() == uh.kind() &&
               (th.is(TermKind::Const) || th.is(TermKind::Free)) && th.name() == uh.name();
  if (!heads || ta.size() != ua.size()) return false;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (!conv(ta[i], ua[i])) return false;
  }
  return true;
}

bool Reducer::convertible(const Term& t, const Term& u) { return conv(t, u); }

std::optional<Substitution> match_pattern(const RewriteRule& rule, const Term& t,
                                          const ReductionConfig& config, const Theory& theory) {
  Reducer r(theory, config);
  return r.match(rule.lhs, rule.pattern_vars, t);
}

Term whnf(const Theory& theory, const Term& t, const ReductionConfig& config) {
  return Reducer(theory, config).whnf(t);
}

Term normalize(const Theory& theory, const Term& t, const ReductionConfig& config, Strategy strategy) {
  return Reducer(theory, config).normalize(t, strategy);
}

bool convertible(const Theory& theory, const Term& t, const Term& u, const ReductionConfig& config) {
  return Reducer(theory, config).convertible(t, u);
}

}  // namespace lpmr
