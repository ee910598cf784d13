#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lpmr/diagnostic.hpp"
#include "lpmr/rewrite.hpp"
#include "lpmr/term.hpp"
#include "lpmr/theory.hpp"

namespace lpmr {

/**
 * A theory morphism: every primitive constant of the source is assigned a
 * closed term of the target, and the assignment is extended homomorphically.
 * Definitions of the source are not assigned; a reference to a source
 * definition `d` is translated to the constant `d + definition_suffix`, which
 * names the transported copy of `d` in the target.
 */
struct Morphism {
  std::string name;
  std::shared_ptr<const Theory> source;
  std::shared_ptr<const Theory> target;
  std::map<std::string, Term> assignment;
  std::string definition_suffix = "_mu";
};

// One condition of a morphism or logical relation.
struct ConditionResult {
  int condition = 0;  // 1: object constant, 2: type family, 3: rewrite rule
  std::string subject;
  bool ok = true;
  bool fuel_exhausted = false;
  std::string message;
  Term expected;
  Term actual;
  Span span;
};

struct MorphismReport {
  std::vector<ConditionResult> constants;
  std::vector<ConditionResult> rules;

  bool ok() const;
  std::size_t failures(int condition) const;
  std::vector<const ConditionResult*> failed() const;
  std::vector<Diagnostic> diagnostics() const;
};

Morphism identity_morphism(std::shared_ptr<const Theory> theory);

Term apply_morphism(const Morphism& m, const Term& t);
Context apply_morphism_ctx(const Morphism& m, const Context& ctx);
Substitution apply_morphism_subst(const Morphism& m, const Substitution& theta);

// Target extended with the transported copies of the source definitions,
// unchecked; the theory in which the conditions are evaluated.
Theory extended_target(const Morphism& m);

MorphismReport check_morphism(const Morphism& m, const ReductionConfig& config = {});

// m1 : S -> T, m2 : T -> U gives S -> U. Transparent definitions of T used by
// m1's assignment are unfolded first; opaque ones are an error.
Morphism compose_morphisms(const Morphism& m1, const Morphism& m2);

// Copies of the source definitions over the target, renamed with `suffix`.
// Each copy is re-checked; a failure means the morphism checker let an
// invalid morphism through and raises InternalError.
Theory transport_definitions(const Morphism& m, const std::string& suffix = "_mu",
                             const ReductionConfig& config = {});

}  // namespace lpmr
