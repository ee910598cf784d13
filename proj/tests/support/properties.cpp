#include "properties.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "fixtures.hpp"
#include "lpmr/diagnostic.hpp"
#include "lpmr/error.hpp"
#include "lpmr/parser.hpp"
#include "lpmr/printer.hpp"
#include "lpmr/typecheck.hpp"
#include "term_gen.hpp"

namespace lpmr::testing {
namespace {

constexpr int kMaxDepth = 4;
constexpr int kMaxRewrites = 4;
const ReductionConfig kConfig{false, 20000};

struct Outcome {
  enum Kind { Pass, Fail, Discard } kind;
  std::string detail;
};

Outcome pass() { return {Outcome::Pass, {}}; }
Outcome discard() { return {Outcome::Discard, {}}; }
Outcome fail(std::string why) { return {Outcome::Fail, std::move(why)}; }

// Runs `one` until `wanted` cases were checked or the attempt budget is
// spent. Exceptions other than fuel exhaustion count as failures.
void run(PropertyResult& r, std::size_t wanted, const std::function<Outcome()>& one) {
  std::size_t target = r.cases + wanted;
  for (std::size_t attempt = 0; r.cases < target && attempt < wanted * 20; ++attempt) {
    Outcome o;
    try {
      o = one();
    } catch (const FuelExhausted&) {
      o = discard();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    switch (o.kind) {
      case Outcome::Pass:
        ++r.cases;
        break;
      case Outcome::Fail:
        ++r.cases;
        if (r.failures++ == 0) r.first_failure = o.detail;
        break;
      case Outcome::Discard:
        ++r.discarded;
        break;
    }
  }
}

std::size_t share(std::size_t total, std::size_t parts) { return (total + parts - 1) / parts; }

std::uint64_t mix(std::uint64_t seed, std::size_t salt) { return seed * 0x9E3779B97F4A7C15ull + salt * 7919 + 1; }

struct Sample {
  Context ctx;
  Term type;
  Term term;
};

std::optional<Sample> sample(TermGenerator& g, std::size_t max_ctx = 3) {
  std::size_t n = g.pick(max_ctx + 1);
  int depth = 1 + static_cast<int>(g.pick(kMaxDepth));
  Context ctx = g.context(n, 1);
  auto tt = g.typed_term(ctx, 2, depth);
  if (!tt) return std::nullopt;
  return Sample{ctx, tt->first, tt->second};
}

bool well_typed(const Theory& th, const Sample& s) {
  try {
    Checker ch(th, kConfig);
    ch.check_context(s.ctx);
    ch.check(s.ctx, s.term, s.type);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::string show(const Term& t) { return pretty(t); }

std::string show_ctx(const Context& ctx) {
  std::ostringstream os;
  for (const auto& b : ctx) os << b.name << " : " << pretty(b.type) << ", ";
  return os.str();
}

std::vector<std::string> names(const Context& ctx) {
  std::vector<std::string> out;
  for (const auto& b : ctx) out.push_back(b.name);
  return out;
}

// A substitution for (part of) ctx by terms over ctx of the declared types.
Substitution random_subst(TermGenerator& g, const Context& ctx) {
  Substitution theta;
  for (const auto& b : ctx) {
    if (!g.coin(0.8)) continue;
    if (auto v = g.term(ctx, b.type, 1 + static_cast<int>(g.pick(2)))) theta.bind(b.name, *v);
  }
  return theta;
}

// The shared-kernel properties range over these theories.
const std::vector<std::string>& kernel_theories() {
  static const std::vector<std::string> ts = {"PLeq", "MulGr", "UFOL_dep", "List", "Nat"};
  return ts;
}

struct LoadedMorphism {
  std::string label;
  Morphism m;
  std::shared_ptr<const Theory> ext;
};

const std::vector<LoadedMorphism>& morphisms() {
  static const std::vector<LoadedMorphism> ms = [] {
    std::vector<LoadedMorphism> out;
    for (const auto& f : morphism_fixtures()) {
      Morphism m = load_morphism(f);
      auto ext = std::make_shared<const Theory>(extended_target(m));
      out.push_back({f.label, std::move(m), std::move(ext)});
    }
    return out;
  }();
  return ms;
}

struct LoadedRelation {
  std::string label;
  LogicalRelation lr;
  std::shared_ptr<const Theory> ext;
};

const std::vector<LoadedRelation>& relations() {
  static const std::vector<LoadedRelation> rs = [] {
    std::vector<LoadedRelation> out;
    for (const auto& f : relation_fixtures()) {
      LogicalRelation lr = load_relation(f);
      auto ext = std::make_shared<const Theory>(extended_target(lr));
      out.push_back({f.label, std::move(lr), std::move(ext)});
    }
    return out;
  }();
  return rs;
}

GenOptions with_redexes(double rate = 0.3) {
  GenOptions o;
  o.redex_rate = rate;
  return o;
}

}  // namespace

PropertyResult prop_subst_composition(const PropertyConfig& c) {
  PropertyResult r{"substitution composes"};
  const auto& ts = kernel_theories();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    auto th = theory(ts[k]);
    TermGenerator g(*th, mix(c.seed, 100 + k));
    run(r, share(c.cases, ts.size()), [&]() -> Outcome {
      auto s = sample(g);
      if (!s || s->ctx.empty()) return discard();
      Substitution t1 = random_subst(g, s->ctx);
      Substitution t2 = random_subst(g, s->ctx);
      // (M t1) t2 == M (t1 ; t2) where the composite applies t2 to t1's values
      // and keeps t2 on the variables t1 leaves alone.
      Substitution comp;
      for (const auto& [x, v] : t1) comp.bind(x, subst(v, t2));
      for (const auto& [x, v] : t2) comp.bind(x, v);
      Term lhs = subst(subst(s->term, t1), t2);
      Term rhs = subst(s->term, comp);
      if (alpha_eq(lhs, rhs)) return pass();
      return fail(show(s->term) + ": " + show(lhs) + " vs " + show(rhs));
    });
  }
  return r;
}

PropertyResult prop_alpha_renaming(const PropertyConfig& c) {
  PropertyResult r{"binder renaming is alpha-equivalence"};
  const auto& ts = kernel_theories();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    auto th = theory(ts[k]);
    TermGenerator g(*th, mix(c.seed, 200 + k));
    run(r, share(c.cases, ts.size()), [&]() -> Outcome {
      auto s = sample(g);
      if (!s) return discard();
      Term renamed = rename_hints(s->term, "z");
      if (!alpha_eq(s->term, renamed) || s->term.hash() != renamed.hash())
        return fail(show(s->term) + " vs " + show(renamed));
      // Renaming a free variable apart changes the term unless it does not occur.
      for (const auto& x : free_vars(s->term)) {
        Term moved = subst(s->term, Substitution{{x, Term::free(x + "'")}});
        if (alpha_eq(moved, s->term)) return fail("renaming " + x + " left " + show(s->term) + " unchanged");
      }
      return pass();
    });
  }
  return r;
}

PropertyResult prop_free_vars_of_subst(const PropertyConfig& c) {
  PropertyResult r{"free variables of a substitution instance"};
  const auto& ts = kernel_theories();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    auto th = theory(ts[k]);
    TermGenerator g(*th, mix(c.seed, 300 + k));
    run(r, share(c.cases, ts.size()), [&]() -> Outcome {
      auto s = sample(g);
      if (!s || s->ctx.empty()) return discard();
      Substitution theta = random_subst(g, s->ctx);
      std::set<std::string> expected;
      for (const auto& x : free_vars(s->term)) {
        if (const Term* v = theta.find(x)) {
          auto fv = free_vars(*v);
          expected.insert(fv.begin(), fv.end());
        } else {
          expected.insert(x);
        }
      }
      if (free_vars(subst(s->term, theta)) == expected) return pass();
      return fail(show(s->term));
    });
  }
  return r;
}

PropertyResult prop_parse_pretty_round_trip(const PropertyConfig& c) {
  PropertyResult r{"parse after pretty is the identity"};
  const auto& ts = theory_fixtures();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    auto th = theory(ts[k]);
    TermGenerator g(*th, mix(c.seed, 400 + k), with_redexes());
    run(r, share(c.cases, ts.size()), [&]() -> Outcome {
      auto s = sample(g);
      if (!s) return discard();
      for (const Term& t : {s->term, s->type}) {
        std::string text = pretty(t);
        Term back;
        try {
          back = parse_term(text, names(s->ctx));
        } catch (const ParseError& e) {
          return fail(text + ": " + e.what());
        }
        if (!alpha_eq(back, t)) return fail(text + " reparsed as " + pretty(back));
      }
      return pass();
    });
  }
  return r;
}

PropertyResult prop_strategy_independence(const PropertyConfig& c) {
  PropertyResult r{"outermost and innermost normal forms agree"};
  const auto& ts = theory_fixtures();
  // Twice the usual count: at least a thousand terms over the corpus.
  const std::size_t total = std::max<std::size_t>(2 * c.cases, 1000);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    auto th = theory(ts[k]);
    TermGenerator g(*th, mix(c.seed, 500 + k), with_redexes());
    run(r, share(total, ts.size()), [&]() -> Outcome {
      auto s = sample(g);
      if (!s) return discard();
      Term outer = Reducer(*th, kConfig).normalize(s->term, Strategy::Outermost);
      Term inner = Reducer(*th, kConfig).normalize(s->term, Strategy::Innermost);
      if (alpha_eq(outer, inner)) return pass();
      return fail(ts[k] + ": " + show(s->term) + " ~> " + show(outer) + " | " + show(inner));
    });
  }
  return r;
}

PropertyResult prop_normalize_idempotent(const PropertyConfig& c) {
  PropertyResult r{"normal forms are normal"};
  const auto& ts = theory_fixtures();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    auto th = theory(ts[k]);
    TermGenerator g(*th, mix(c.seed, 600 + k), with_redexes());
    run(r, share(c.cases, ts.size()), [&]() -> Outcome {
      auto s = sample(g);
      if (!s) return discard();
      for (Strategy st : {Strategy::Outermost, Strategy::Innermost}) {
        Term n = Reducer(*th, kConfig).normalize(s->term, st);
        Term nn = Reducer(*th, kConfig).normalize(n, st);
        if (!alpha_eq(n, nn)) return fail(ts[k] + ": " + show(n) + " ~> " + show(nn));
        if (!Reducer(*th, kConfig).convertible(s->term, n)) return fail(ts[k] + ": not convertible with " + show(n));
      }
      return pass();
    });
  }
  return r;
}

PropertyResult prop_conversion_matches_normal_forms(const PropertyConfig& c) {
  PropertyResult r{"conversion agrees with reduction"};
  const auto& ts = theory_fixtures();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    auto th = theory(ts[k]);
    TermGenerator g(*th, mix(c.seed, 700 + k), with_redexes());
    run(r, share(c.cases, ts.size()), [&]() -> Outcome {
      auto s = sample(g);
      if (!s) return discard();
      auto [t1, n1] = rewrite_randomly(*th, s->term, 1 + static_cast<int>(g.pick(kMaxRewrites)), g.rng(), kConfig);
      auto [t2, n2] = rewrite_randomly(*th, t1, 1 + static_cast<int>(g.pick(kMaxRewrites)), g.rng(), kConfig);
      (void)n1;
      (void)n2;
      Reducer red(*th, kConfig);
      // Reducts are convertible in both directions and transitively.
      if (!red.convertible(s->term, t1)) return fail(ts[k] + ": " + show(s->term) + " !~ " + show(t1));
      if (!Reducer(*th, kConfig).convertible(t1, s->term)) return fail(ts[k] + ": symmetry " + show(t1));
      if (!Reducer(*th, kConfig).convertible(t1, t2)) return fail(ts[k] + ": " + show(t1) + " !~ " + show(t2));
      if (!Reducer(*th, kConfig).convertible(s->term, t2)) return fail(ts[k] + ": transitivity " + show(t2));
      // Equal normal forms imply convertibility.
      Term n = Reducer(*th, kConfig).normalize(t2);
      if (!Reducer(*th, kConfig).convertible(n, s->term)) return fail(ts[k] + ": normal form " + show(n));
      return pass();
    });
  }
  return r;
}

PropertyResult prop_subject_reduction(const PropertyConfig& c) {
  PropertyResult r{"reduction preserves types"};
  const auto& ts = theory_fixtures();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    auto th = theory(ts[k]);
    TermGenerator g(*th, mix(c.seed, 800 + k), with_redexes(0.7));
    run(r, share(c.cases, ts.size()), [&]() -> Outcome {
      auto s = sample(g);
      if (!s || !well_typed(*th, *s)) return discard();
      auto [t, n] = rewrite_randomly(*th, s->term, 1 + static_cast<int>(g.pick(kMaxRewrites)), g.rng(), kConfig);
      if (n == 0) return discard();
      Term nf = Reducer(*th, kConfig).normalize(s->term);
      for (const Term& reduct : {t, nf}) {
        try {
          Checker(*th, kConfig).check(s->ctx, reduct, s->type);
        } catch (const TypeError& e) {
          return fail(ts[k] + ": " + show(s->term) + " ~> " + show(reduct) + ": " + e.what());
        }
      }
      return pass();
    });
  }
  return r;
}

PropertyResult prop_inference_stable(const PropertyConfig& c) {
  PropertyResult r{"inferred types are deterministic and checkable"};
  const auto& ts = theory_fixtures();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    auto th = theory(ts[k]);
    TermGenerator g(*th, mix(c.seed, 900 + k));
    run(r, share(c.cases, ts.size()), [&]() -> Outcome {
      auto s = sample(g);
      if (!s || !well_typed(*th, *s)) return discard();
      Term a = Checker(*th, kConfig).infer(s->ctx, s->term);
      Term b = Checker(*th, kConfig).infer(s->ctx, rename_hints(s->term, "q"));
      if (!alpha_eq(a, b)) return fail(ts[k] + ": " + show(a) + " vs " + show(b));
      if (!Reducer(*th, kConfig).convertible(a, s->type)) return fail(ts[k] + ": inferred " + show(a));
      Checker(*th, kConfig).check(s->ctx, s->term, a);
      return pass();
    });
  }
  return r;
}

PropertyResult prop_morphism_substitution(const PropertyConfig& c) {
  PropertyResult r{"morphisms commute with substitution"};
  const auto& ms = morphisms();
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const auto& m = ms[k].m;
    TermGenerator g(*m.source, mix(c.seed, 1000 + k));
    run(r, share(c.cases, ms.size()), [&]() -> Outcome {
      auto s = sample(g);
      if (!s || s->ctx.empty()) return discard();
      Substitution theta = random_subst(g, s->ctx);
      Term lhs = apply_morphism(m, subst(s->term, theta));
      Term rhs = subst(apply_morphism(m, s->term), apply_morphism_subst(m, theta));
      if (alpha_eq(lhs, rhs)) return pass();
      return fail(ms[k].label + ": " + show(s->term));
    });
  }
  return r;
}

PropertyResult prop_morphism_conversion(const PropertyConfig& c) {
  PropertyResult r{"morphisms preserve conversion"};
  const auto& ms = morphisms();
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const auto& lm = ms[k];
    TermGenerator g(*lm.m.source, mix(c.seed, 1100 + k), with_redexes());
    run(r, share(c.cases, ms.size()), [&]() -> Outcome {
      auto s = sample(g);
      if (!s) return discard();
      auto [t, n] =
          rewrite_randomly(*lm.m.source, s->term, 1 + static_cast<int>(g.pick(kMaxRewrites)), g.rng(), kConfig);
      if (n == 0) return discard();
      Term a = apply_morphism(lm.m, s->term);
      Term b = apply_morphism(lm.m, t);
      if (Reducer(*lm.ext, kConfig).convertible(a, b)) return pass();
      return fail(lm.label + ": " + show(s->term) + " ~> " + show(t) + " but " + show(a) + " !~ " + show(b));
    });
  }
  return r;
}

PropertyResult prop_morphism_judgments(const PropertyConfig& c) {
  PropertyResult r{"morphisms preserve typing"};
  const auto& ms = morphisms();
  // Every corpus definition, transported and rechecked, along the identity
  // of its theory and along each corpus morphism.
  for (const auto& name : theory_fixtures()) {
    auto th = theory(name);
    try {
      transport_definitions(identity_morphism(th), "_mu", kConfig);
      r.cases += th->definitions().size();
    } catch (const std::exception& e) {
      r.cases += th->definitions().size();
      if (r.failures++ == 0) r.first_failure = name + " (identity): " + e.what();
    }
  }
  for (const auto& lm : ms) {
    std::size_t defs = lm.m.source->definitions().size();
    try {
      transport_definitions(lm.m, lm.m.definition_suffix, kConfig);
      r.cases += defs;
    } catch (const std::exception& e) {
      r.cases += defs;
      if (r.failures++ == 0) r.first_failure = lm.label + ": " + e.what();
    }
  }
  // Random judgments of the source.
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const auto& lm = ms[k];
    TermGenerator g(*lm.m.source, mix(c.seed, 1200 + k));
    run(r, share(c.cases, ms.size()), [&]() -> Outcome {
      auto s = sample(g);
      if (!s || !well_typed(*lm.m.source, *s)) return discard();
      Context ctx = apply_morphism_ctx(lm.m, s->ctx);
      try {
        Checker ch(*lm.ext, kConfig);
        ch.check_context(ctx);
        ch.check(ctx, apply_morphism(lm.m, s->term), apply_morphism(lm.m, s->type));
      } catch (const TypeError& e) {
        return fail(lm.label + ": " + show_ctx(s->ctx) + show(s->term) + " : " + show(s->type) + ": " + e.what());
      }
      return pass();
    });
  }
  return r;
}

PropertyResult prop_composition_associative(const PropertyConfig& c) {
  PropertyResult r{"composition is associative"};
  Morphism md = mul_div_gr();
  Morphism dm = div_mul_gr();
  struct Chain {
    Morphism a, b, c;
  };
  std::vector<Chain> chains = {{md, dm, md}, {dm, md, dm}};
  for (std::size_t k = 0; k < chains.size(); ++k) {
    const auto& ch = chains[k];
    Morphism left = compose_morphisms(compose_morphisms(ch.a, ch.b), ch.c);
    Morphism right = compose_morphisms(ch.a, compose_morphisms(ch.b, ch.c));
    for (const auto& [name, value] : left.assignment) {
      ++r.cases;
      auto it = right.assignment.find(name);
      if (it == right.assignment.end() || !alpha_eq(value, it->second)) {
        if (r.failures++ == 0) r.first_failure = "assignments differ on " + name;
      }
    }
    // Composites are defined on primitives only; source definitions map to
    // copies that the next morphism does not know.
    GenOptions o;
    o.use_definitions = false;
    TermGenerator g(*ch.a.source, mix(c.seed, 1300 + k), o);
    run(r, share(c.cases, chains.size()), [&]() -> Outcome {
      auto s = sample(g);
      if (!s) return discard();
      Term via_left = apply_morphism(left, s->term);
      Term via_right = apply_morphism(right, s->term);
      Term stepwise = apply_morphism(ch.c, apply_morphism(ch.b, apply_morphism(ch.a, s->term)));
      if (!alpha_eq(via_left, via_right)) return fail(show(s->term) + ": " + show(via_left) + " vs " + show(via_right));
      if (!alpha_eq(via_left, stepwise)) return fail(show(s->term) + ": composite differs from stepwise " + show(stepwise));
      return pass();
    });
  }
  return r;
}

PropertyResult prop_relation_substitution(const PropertyConfig& c) {
  PropertyResult r{"relations commute with substitution"};
  const auto& rs = relations();
  for (std::size_t k = 0; k < rs.size(); ++k) {
    const auto& lr = rs[k].lr;
    TermGenerator g(lr.source(), mix(c.seed, 1400 + k));
    run(r, share(c.cases, rs.size()), [&]() -> Outcome {
      auto s = sample(g);
      if (!s || s->ctx.empty()) return discard();
      Substitution theta = random_subst(g, s->ctx);
      Substitution lifted;
      for (const auto& [x, v] : theta) {
        for (std::size_t i = 1; i <= lr.arity(); ++i) lifted.bind(copy_name(x, i), relation_image(lr, i, v));
        lifted.bind(star_name(x), translate_term(lr, v));
      }
      Term lhs = translate_term(lr, subst(s->term, theta));
      Term rhs = subst(translate_term(lr, s->term), lifted);
      if (!alpha_eq(lhs, rhs)) return fail(rs[k].label + ": " + show(s->term));
      for (std::size_t i = 1; i <= lr.arity(); ++i) {
        Term li = relation_image(lr, i, subst(s->term, theta));
        Term ri = subst(relation_image(lr, i, s->term), lifted);
        if (!alpha_eq(li, ri)) return fail(rs[k].label + ": image " + std::to_string(i) + " of " + show(s->term));
      }
      return pass();
    });
  }
  return r;
}

PropertyResult prop_relation_conversion(const PropertyConfig& c) {
  PropertyResult r{"relations preserve conversion"};
  const auto& rs = relations();
  for (std::size_t k = 0; k < rs.size(); ++k) {
    const auto& lrel = rs[k];
    TermGenerator g(lrel.lr.source(), mix(c.seed, 1500 + k), with_redexes());
    run(r, share(c.cases, rs.size()), [&]() -> Outcome {
      auto s = sample(g);
      if (!s) return discard();
      auto [t, n] =
          rewrite_randomly(lrel.lr.source(), s->term, 1 + static_cast<int>(g.pick(kMaxRewrites)), g.rng(), kConfig);
      if (n == 0) return discard();
      Term a = translate_term(lrel.lr, s->term);
      Term b = translate_term(lrel.lr, t);
      if (Reducer(*lrel.ext, kConfig).convertible(a, b)) return pass();
      return fail(lrel.label + ": " + show(s->term) + " ~> " + show(t));
    });
  }
  return r;
}

PropertyResult prop_abstraction(const PropertyConfig& c) {
  PropertyResult r{"relations relate the images of every term"};
  const auto& rs = relations();
  // Every corpus definition, translated and rechecked.
  for (const auto& lrel : rs) {
    std::size_t defs = lrel.lr.source().definitions().size();
    try {
      transport_relation(lrel.lr, kConfig);
      r.cases += defs;
    } catch (const std::exception& e) {
      r.cases += defs;
      if (r.failures++ == 0) r.first_failure = lrel.label + ": " + e.what();
    }
  }
  for (std::size_t k = 0; k < rs.size(); ++k) {
    const auto& lrel = rs[k];
    TermGenerator g(lrel.lr.source(), mix(c.seed, 1600 + k));
    run(r, share(c.cases, rs.size()), [&]() -> Outcome {
      auto s = sample(g);
      if (!s || !well_typed(lrel.lr.source(), *s)) return discard();
      Context ctx = translate_context(lrel.lr, s->ctx);
      try {
        Checker ch(*lrel.ext, kConfig);
        ch.check_context(ctx);
        ch.check(ctx, translate_term(lrel.lr, s->term), related(lrel.lr, s->type, s->term));
      } catch (const TypeError& e) {
        return fail(lrel.label + ": " + show_ctx(s->ctx) + show(s->term) + " : " + show(s->type) + ": " + e.what());
      }
      return pass();
    });
  }
  return r;
}

PropertyResult prop_context_size(const PropertyConfig& c) {
  PropertyResult r{"relational contexts have (n+1)|G| bindings"};
  const auto& rs = relations();
  for (std::size_t k = 0; k < rs.size(); ++k) {
    const auto& lr = rs[k].lr;
    TermGenerator g(lr.source(), mix(c.seed, 1700 + k));
    run(r, share(c.cases, rs.size()), [&]() -> Outcome {
      Context ctx = g.context(g.pick(7), 2);
      Context out = translate_context(lr, ctx);
      if (out.size() != (lr.arity() + 1) * ctx.size())
        return fail(rs[k].label + ": " + std::to_string(ctx.size()) + " bindings became " +
                    std::to_string(out.size()));
      // Layout: the n copies of each variable, then its witness.
      for (std::size_t j = 0; j < ctx.size(); ++j) {
        const auto& x = ctx[j].name;
        for (std::size_t i = 1; i <= lr.arity(); ++i) {
          if (out[j * (lr.arity() + 1) + i - 1].name != copy_name(x, i)) return fail(rs[k].label + ": layout");
        }
        if (out[j * (lr.arity() + 1) + lr.arity()].name != star_name(x)) return fail(rs[k].label + ": layout");
      }
      return pass();
    });
  }
  return r;
}

}  // namespace lpmr::testing
