#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lpmr/term.hpp"
#include "lpmr/theory.hpp"

namespace lpmr {

struct ReductionConfig {
  bool eta = false;
  std::uint64_t fuel = 100000;  // beta, delta and rule steps per public call
};

enum class Strategy { Outermost, Innermost };

/**
 * Reduction engine over one theory with a single fuel budget.
 *
 * All operations are untyped. Rules are tried in declaration order, the
 * first match wins. Every beta step, definition unfolding and rule firing
 * consumes one unit of fuel; running out throws FuelExhausted. Weak head
 * normal forms are memoized for the lifetime of the Reducer, so repeated
 * matching against the same argument costs one reduction. The free
 * functions below create a fresh Reducer per call.
 */
class Reducer {
 public:
  Reducer(const Theory& theory, ReductionConfig config);

  Term whnf(const Term& t);
  Term normalize(const Term& t, Strategy strategy = Strategy::Outermost);
  bool convertible(const Term& t, const Term& u);

  // Match `lhs` (whose pattern variables are `vars`) against the whole of t.
  std::optional<Substitution> match(const Term& lhs, const std::vector<std::string>& vars,
                                    const Term& t);
  // Contract the redex at the root of t, if any (beta, unfolding or a rule).
  std::optional<Term> step(const Term& t);

  std::uint64_t steps() const { return steps_; }
  const Theory& theory() const { return theory_; }
  const ReductionConfig& config() const { return config_; }

 private:
  void tick();
  bool match_into(const Term& pat, const Term& t, const std::vector<std::string>& vars,
                  Substitution& sigma);
  Term outermost(const Term& t);
  Term innermost(const Term& t);
  bool conv(const Term& t, const Term& u);

  const Theory& theory_;
  ReductionConfig config_;
  std::uint64_t steps_ = 0;
  std::unordered_map<Term, Term, TermHash, TermAlphaEq> whnf_memo_;
};

std::optional<Substitution> match_pattern(const RewriteRule& rule, const Term& t,
                                          const ReductionConfig& config, const Theory& theory);
Term whnf(const Theory& theory, const Term& t, const ReductionConfig& config = {});
Term normalize(const Theory& theory, const Term& t, const ReductionConfig& config = {},
               Strategy strategy = Strategy::Outermost);
bool convertible(const Theory& theory, const Term& t, const Term& u,
                 const ReductionConfig& config = {});

}  // namespace lpmr
