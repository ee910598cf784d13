#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "lpmr/morphism.hpp"
#include "lpmr/parser.hpp"
#include "lpmr/printer.hpp"
#include "lpmr/skeleton.hpp"
#include "lpmr/typecheck.hpp"
#include "lpmr/workspace.hpp"

namespace {

using namespace lpmr;

std::shared_ptr<const Theory> corpus(const std::string& name) {
  static std::map<std::string, std::shared_ptr<const Theory>> cache;
  auto& slot = cache[name];
  if (!slot) {
    LoadResult r = load_file(std::string(LPMR_CORPUS_DIR) + "/" + name + ".dk");
    if (!r.ok()) throw Error("corpus theory " + name + " does not check");
    slot = std::make_shared<const Theory>(std::move(r.theory));
  }
  return slot;
}

// times (inv x1) (times x1 (times (inv x2) (times x2 ... y))) with n pairs.
Term cancelling_chain(int n) {
  Term t = Term::free("y");
  for (int i = n; i > 0; --i) {
    Term x = Term::free("x" + std::to_string(i));
    Term inv = Term::app(Term::constant("inv"), x);
    t = Term::app(Term::app(Term::constant("times"), inv), Term::app(Term::app(Term::constant("times"), x), t));
  }
  return t;
}

void BM_NormalizeGroup(benchmark::State& state) {
  auto th = corpus("MulGr");
  Term t = cancelling_chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(normalize(*th, t));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NormalizeGroup)->RangeMultiplier(2)->Range(2, 64)->Complexity();

void BM_ConvertibleDivision(benchmark::State& state) {
  auto th = corpus("DivGr");
  Term lhs = parse_term("div (div (div y x) y) (div 1 x)", {"x", "y"});
  Term one = Term::constant("1");
  for (auto _ : state) benchmark::DoNotOptimize(convertible(*th, lhs, one));
}
BENCHMARK(BM_ConvertibleDivision);

void BM_CheckTheory(benchmark::State& state) {
  auto th = corpus("HFOL");
  for (auto _ : state) benchmark::DoNotOptimize(check_theory(*th));
}
BENCHMARK(BM_CheckTheory);

void BM_ParsePretty(benchmark::State& state) {
  const std::string text =
      "a => p => q => Hpq => Hp => all_i a q (x => all_e a (x => imp (p x) (q x)) Hpq x (all_e a p Hp x))";
  for (auto _ : state) benchmark::DoNotOptimize(pretty(parse_term(text)));
}
BENCHMARK(BM_ParsePretty);

void BM_CheckMorphism(benchmark::State& state) {
  Morphism m;
  m.name = "MulDivGr";
  m.source = corpus("MulGr");
  m.target = corpus("DivGr");
  for (const auto& c : m.source->primitives()) m.assignment[c] = Term::constant(c);
  m.assignment["times"] = parse_term("x : iota => y : iota => div x (div 1 y)");
  m.assignment["inv"] = parse_term("x : iota => div 1 x");
  for (auto _ : state) benchmark::DoNotOptimize(check_morphism(m));
}
BENCHMARK(BM_CheckMorphism);

void BM_GenerateSkeleton(benchmark::State& state) {
  auto src = corpus("HFOL");
  auto tgt = corpus("SFOL_pair");
  SkeletonOptions o;
  o.kind = state.range(0) == 0 ? SkeletonKind::Morphism : SkeletonKind::Relation;
  o.arity = static_cast<std::size_t>(state.range(0));
  o.target_module = "SFOL_pair";
  for (auto _ : state) benchmark::DoNotOptimize(generate_skeleton(*src, *tgt, o));
}
BENCHMARK(BM_GenerateSkeleton)->Arg(0)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
