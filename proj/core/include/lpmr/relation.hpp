#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lpmr/morphism.hpp"

namespace lpmr {

/**
 * An n-ary logical relation over morphisms m_1..m_n sharing source and
 * target. A variable x of the source becomes n+1 variables of the target:
 * its images x%1..x%n and the proof x%s that they are related. `%` never
 * occurs in surface identifiers, so the copies cannot capture user names.
 */
struct LogicalRelation {
  std::string name;
  std::vector<Morphism> morphisms;
  std::map<std::string, Term> assignment;
  std::string definition_suffix = "_lr";

  std::size_t arity() const { return morphisms.size(); }
  const Theory& source() const { return *morphisms.front().source; }
  const Theory& target() const { return *morphisms.front().target; }
};

std::string copy_name(const std::string& x, std::size_t i);  // 1-based
std::string star_name(const std::string& x);

// Sets each morphism's definition suffix to `_mu_<i>` and checks that the
// morphisms share source and target. Throws Error otherwise.
LogicalRelation make_relation(std::string name, std::vector<Morphism> morphisms,
                              std::map<std::string, Term> assignment);

// mu_i(t): the i-th morphism image with free variables renamed to copy i.
Term relation_image(const LogicalRelation& lr, std::size_t i, const Term& t);

Term translate_term(const LogicalRelation& lr, const Term& t);
Term translate_kind(const LogicalRelation& lr, const Term& family, const Term& kind);
Context translate_context(const LogicalRelation& lr, const Context& ctx);

// lr(A) mu_1(M) ... mu_n(M): the statement that M's images are related.
Term related(const LogicalRelation& lr, const Term& type, const Term& m);

// Target extended with every transported copy and relational translation
// of the source definitions (unchecked).
Theory extended_target(const LogicalRelation& lr);

MorphismReport check_relation(const LogicalRelation& lr, const ReductionConfig& config = {});

// Copies d_mu_i and translations d_lr of every source definition, each
// re-checked over the target (InternalError on failure).
Theory transport_relation(const LogicalRelation& lr, const ReductionConfig& config = {});

}  // namespace lpmr
