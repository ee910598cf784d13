#pragma once

#include <vector>

#include "lpmr/diagnostic.hpp"
#include "lpmr/rewrite.hpp"
#include "lpmr/term.hpp"
#include "lpmr/theory.hpp"

namespace lpmr {

/**
 * Bidirectional checker for objects, types and kinds over a theory.
 *
 * Errors are reported by throwing TypeError (or FuelExhausted). Every
 * conversion test and weak-head reduction gets its own fuel budget.
 */
class Checker {
 public:
  explicit Checker(const Theory& theory, ReductionConfig config = {});

  Term infer(const Context& ctx, const Term& t);
  void check(const Context& ctx, const Term& t, const Term& expected);
  // t must be classified by Type or Kind; returns that sort.
  Term check_classifier(const Context& ctx, const Term& t);
  void check_context(const Context& ctx);

  Term whnf(const Term& t);
  bool convertible(const Term& a, const Term& b);

 private:
  Term infer_open(Context& ctx, const Term& t);
  void check_open(Context& ctx, const Term& t, const Term& expected);
  Term sort_of(Context& ctx, const Term& t);

  const Theory& theory_;
  ReductionConfig config_;
};

Term infer(const Theory& theory, const Context& ctx, const Term& t, const ReductionConfig& config = {});
void check(const Theory& theory, const Context& ctx, const Term& t, const Term& expected,
           const ReductionConfig& config = {});

/**
 * Well-formedness of a rewrite rule against the theory. On success the rule's
 * context (typing of its de-linearized pattern variables) and identification
 * (linearized variable -> variable it duplicates) are filled in.
 */
std::vector<Diagnostic> check_rule(const Theory& theory, RewriteRule& rule,
                                   const ReductionConfig& config = {});

// Checks entries in order against the theory-so-far and keeps what passed.
class TheoryChecker {
 public:
  explicit TheoryChecker(ReductionConfig config = {}, Theory base = Theory());

  std::vector<Diagnostic> add(const Entry& entry);
  const Theory& theory() const { return theory_; }
  const ReductionConfig& config() const { return config_; }

 private:
  ReductionConfig config_;
  Theory theory_;
};

std::vector<Diagnostic> check_theory(const Theory& theory, const ReductionConfig& config = {});

}  // namespace lpmr
