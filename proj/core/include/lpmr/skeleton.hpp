#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lpmr/diagnostic.hpp"
#include "lpmr/morphism.hpp"
#include "lpmr/parser.hpp"
#include "lpmr/relation.hpp"

namespace lpmr {

enum class SkeletonKind { Morphism, Relation };

struct SkeletonOptions {
  SkeletonKind kind = SkeletonKind::Morphism;
  std::size_t arity = 2;      // relations only
  std::string target_module;  // name used in the #REQUIRE header
};

/**
 * Translation skeleton of `source` over `target`.
 *
 * Morphisms: each primitive c becomes `def c_mu : mu(A) := TODO.`, each
 * definition its transported copy, each rewrite rule a block of frozen
 * pattern variables `_r<k>_<x>` followed by an #ASSERT of condition 3.
 * Relations: c_mu_1..c_mu_n and c_lr per primitive, and the analogous
 * per-morphism and relational asserts. Throws Error on a name collision
 * with the target.
 */
std::string generate_skeleton(const Theory& source, const Theory& target, const SkeletonOptions& options);

// Suffix of a generated name, e.g. `_mu`, `_mu_2`, `_lr`.
std::string morphism_suffix(SkeletonKind kind, std::size_t i);

struct IngestResult {
  std::optional<Morphism> morphism;
  std::optional<LogicalRelation> relation;
  Theory helpers;     // entries of the filled skeleton that extend the target
  Theory parameters;  // the filled `c_mu` definitions, typed as generated
  std::shared_ptr<const Theory> extended;  // target plus helpers
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics) && (morphism || relation); }
};

/**
 * Reads a filled skeleton back. Entries named after a source primitive plus
 * a generated suffix become the assignment; references between them are
 * resolved. Copies of source definitions, frozen variables and pragmas are
 * dropped (they are regenerated and re-checked). Every other entry is a
 * helper and extends the target. A remaining TODO or a suffixed name without
 * a source counterpart is an error.
 */
IngestResult ingest_skeleton(const SourceFile& filled, std::shared_ptr<const Theory> source,
                             std::shared_ptr<const Theory> target, const SkeletonOptions& options,
                             const ReductionConfig& config = {});

/**
 * Conditions of an ingested skeleton. Each filled parameter is checked as a
 * definition `c_mu : mu(A) := body` in the extended target (conditions 1
 * and 2); rule conditions are then checked for the suffix morphisms into
 * target + parameters, where parameters unfold by delta. Same verdicts as
 * checking the inlined assignment, without requiring abstractions inside
 * parameters to be annotated.
 */
MorphismReport check_skeleton(const IngestResult& ingested, const SkeletonOptions& options,
                              const ReductionConfig& config = {});

/**
 * The transported theory of an ingested skeleton: helpers, the filled
 * parameters as definitions, then every source definition translated along
 * the suffix morphisms into that extension (so transported definitions
 * refer to `c_mu` rather than inlining its body). Empty when the source has
 * no definitions. Each entry is re-checked; InternalError if one fails.
 */
Theory transport_skeleton(const IngestResult& ingested, const SkeletonOptions& options,
                          const ReductionConfig& config = {});

// `#REQUIRE target_module.` followed by the entries; empty for an empty theory.
std::string render_transport(const std::string& target_module, const Theory& transported);

}  // namespace lpmr
