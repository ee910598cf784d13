#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lpmr/morphism.hpp"
#include "lpmr/relation.hpp"
#include "lpmr/skeleton.hpp"
#include "lpmr/workspace.hpp"

namespace lpmr::testing {

// Absolute path of a file below the corpus directory.
std::string corpus_path(const std::string& relative);

// Loads `<corpus>/<name>.dk` (with its requirements) and throws if it does
// not check. Results are cached per name.
std::shared_ptr<const Theory> theory(const std::string& name);

// Every theory fixture of the corpus: theories, not filled skeletons.
const std::vector<std::string>& theory_fixtures();

struct MorphismFixture {
  std::string label;
  std::string source;
  std::string target;
  std::string filled;  // corpus-relative file name without extension
  bool eta = false;
};

struct RelationFixture {
  std::string label;
  std::string source;
  std::string target;
  std::string filled;
  std::size_t arity;
};

// Corpus morphisms expected to pass every condition.
const std::vector<MorphismFixture>& morphism_fixtures();
const std::vector<RelationFixture>& relation_fixtures();

// Ingests a filled skeleton; throws with the diagnostics if that fails.
IngestResult ingest(const std::string& filled, const std::string& source, const std::string& target,
                    const SkeletonOptions& options);
Morphism load_morphism(const MorphismFixture& f);
LogicalRelation load_relation(const RelationFixture& f);

// MulDivGr built directly in code: times, 1, inv through division, the
// PLeq part sent to itself.
Morphism mul_div_gr();
// DivMulGr built directly in code.
Morphism div_mul_gr();
// MulDivGr with inv sent to the identity; only rule conditions can fail.
Morphism sabotaged_mul_div_gr();

}  // namespace lpmr::testing
