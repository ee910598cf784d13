#include "fixtures.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "lpmr/error.hpp"
#include "lpmr/parser.hpp"

#ifndef LPMR_CORPUS_DIR
#error "LPMR_CORPUS_DIR must point at the corpus directory"
#endif

namespace lpmr::testing {

std::string corpus_path(const std::string& relative) { return std::string(LPMR_CORPUS_DIR) + "/" + relative; }

namespace {

std::string describe(const std::vector<Diagnostic>& ds) {
  std::ostringstream os;
  for (const auto& d : ds) {
    if (d.severity == Severity::Error) os << format_text(d) << "\n";
  }
  return os.str();
}

}  // namespace

std::shared_ptr<const Theory> theory(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const Theory>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  LoadResult r = load_file(corpus_path(name + ".dk"));
  if (!r.ok()) throw Error("corpus theory " + name + " does not check:\n" + describe(r.diagnostics));
  auto t = std::make_shared<const Theory>(std::move(r.theory));
  cache.emplace(name, t);
  return t;
}

const std::vector<std::string>& theory_fixtures() {
  static const std::vector<std::string> names = {
      "PL",   "PLc",   "PLeq",  "MulGr",    "DivGr",     "Q0",   "List", "Tree",          "UFOL",
      "UFOL_dep", "SFOL", "SFOL_pair", "HFOL", "HFOLc", "Nat", "Int",  "Int_pair", "MulGr_irr",
      "PL_unit",  "Tri",  "Tri_R",     "demo/deduction", "demo/computation"};
  return names;
}

const std::vector<MorphismFixture>& morphism_fixtures() {
  static const std::vector<MorphismFixture> fs = {
      {"MulDivGr", "MulGr", "DivGr", "MulGr_to_DivGr"},
      {"DivMulGr", "DivGr", "MulGr", "DivGr_to_MulGr"},
      {"deduction-computation", "PL", "PLc", "PL_to_PLc"},
      {"demo", "demo/deduction", "demo/computation", "demo/deduction_to_computation"},
      {"PL-Q0", "PL", "Q0", "PL_to_Q0"},
      {"List-Tree", "List", "Tree", "List_to_Tree"},
      {"hs", "HFOL", "SFOL_pair", "HFOL_to_SFOL_pair"},
      {"su", "SFOL", "UFOL_dep", "SFOL_to_UFOL_dep"},
      {"UFOL-UFOL_dep", "UFOL", "UFOL_dep", "UFOL_to_UFOL_dep"},
      {"NI", "Nat", "Int_pair", "Nat_to_Int_pair"},
  };
  return fs;
}

const std::vector<RelationFixture>& relation_fixtures() {
  static const std::vector<RelationFixture> fs = {
      {"groups-binary", "MulGr", "MulGr_irr", "MulGr_rel", 2},
      {"PL-unary", "PL", "PL_unit", "PL_rel1", 1},
      {"involution-ternary", "Tri", "Tri_R", "Tri_rel3", 3},
  };
  return fs;
}

IngestResult ingest(const std::string& filled, const std::string& source, const std::string& target,
                    const SkeletonOptions& options) {
  std::string path = corpus_path(filled + ".dk");
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  SourceFile file = parse_file(ss.str(), path);
  IngestResult r = ingest_skeleton(file, theory(source), theory(target), options);
  if (!r.ok()) throw Error("cannot ingest " + filled + ":\n" + describe(r.diagnostics));
  return r;
}

Morphism load_morphism(const MorphismFixture& f) {
  SkeletonOptions o;
  o.kind = SkeletonKind::Morphism;
  return *ingest(f.filled, f.source, f.target, o).morphism;
}

LogicalRelation load_relation(const RelationFixture& f) {
  SkeletonOptions o;
  o.kind = SkeletonKind::Relation;
  o.arity = f.arity;
  return *ingest(f.filled, f.source, f.target, o).relation;
}

namespace {

Morphism group_morphism(const std::string& source, const std::string& target,
                        const std::map<std::string, std::string>& images) {
  Morphism m;
  m.name = source + "_" + target;
  m.source = theory(source);
  m.target = theory(target);
  for (const auto& c : m.source->primitives()) {
    auto it = images.find(c);
    m.assignment[c] = it == images.end() ? Term::constant(c) : parse_term(it->second);
  }
  return m;
}

}  // namespace

Morphism mul_div_gr() {
  return group_morphism("MulGr", "DivGr",
                        {{"times", "x : iota => y : iota => div x (div 1 y)"},
                         {"1", "1"},
                         {"inv", "x : iota => div 1 x"}});
}

Morphism div_mul_gr() {
  return group_morphism("DivGr", "MulGr", {{"div", "x : iota => y : iota => times x (inv y)"}, {"1", "1"}});
}

Morphism sabotaged_mul_div_gr() {
  return group_morphism("MulGr", "DivGr",
                        {{"times", "x : iota => y : iota => div x (div 1 y)"},
                         {"1", "1"},
                         {"inv", "x : iota => x"}});
}

}  // namespace lpmr::testing
