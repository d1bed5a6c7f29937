#include <benchmark/benchmark.h>

#include <set>
#include <vector>

#include "nsyl/nogo.hpp"
#include "nsyl/proof.hpp"
#include "nsyl/semantics.hpp"
#include "nsyl/solver.hpp"

using namespace nsyl;

namespace {

std::set<Atom> family_atom_set(Bound n) {
  const std::vector<Atom> fam = nogo::family_atoms(n);
  return {fam.begin(), fam.end()};
}

void BM_RefuteFamily(benchmark::State& state) {
  const Bound n = static_cast<Bound>(state.range(0));
  const FormulaSet family = nogo::gamma(n, 1, Family::SDagger);
  for (auto _ : state)
    benchmark::DoNotOptimize(refute_witness_chain(family).refuted);
  state.SetLabel(std::to_string(family.size()) + " formulas");
}
BENCHMARK(BM_RefuteFamily)->Arg(4)->Arg(6)->Arg(8);

void BM_WitnessCore(benchmark::State& state) {
  const Bound n = static_cast<Bound>(state.range(0));
  const FormulaSet core = nogo::unsat_core(n, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(satisfiable(core, 1, Engine::Witness).verdict);
  state.SetLabel(std::to_string(core.size()) + " formulas");
}
BENCHMARK(BM_WitnessCore)->Arg(4)->Arg(5)->Arg(6);

void BM_DirectClosure(benchmark::State& state) {
  RuleSet x;
  const auto stock = builtin_rulesets(1);
  for (const char* key : {"darii_ferio", "transfer_z"})
    for (const Rule& rule : stock.at(key).rules) x.rules.push_back(rule);
  const Bound n = static_cast<Bound>(state.range(0));
  const std::set<Atom> atoms = family_atom_set(n);
  const FormulaSet family = nogo::gamma(n, 1, Family::SDagger);
  for (auto _ : state)
    benchmark::DoNotOptimize(direct_closure(family, x, atoms).size());
}
BENCHMARK(BM_DirectClosure)->Arg(4)->Arg(6);

void BM_TheoryOf(benchmark::State& state) {
  const Bound n = static_cast<Bound>(state.range(0));
  const Structure model = nogo::witness_model(n, 1, 1);
  const std::set<Atom> atoms = family_atom_set(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(theory_of(model, atoms, LanguageId::sdagger(1)).size());
  state.SetLabel(std::to_string(model.domain().size()) + " elements");
}
BENCHMARK(BM_TheoryOf)->Arg(4)->Arg(6);

void BM_ColourKnownHard(benchmark::State& state) {
  // Complete graph on four vertices: unsatisfiable encoding, so the witness
  // search must exhaust its space.
  const Graph k4 = Graph::make(4, {{1, 2}, {1, 3}, {1, 4},
                                   {2, 3}, {2, 4}, {3, 4}});
  const FormulaSet enc = reduce_3col(k4);
  for (auto _ : state)
    benchmark::DoNotOptimize(satisfiable(enc, 3, Engine::Witness).verdict);
}
BENCHMARK(BM_ColourKnownHard);

}  // namespace

BENCHMARK_MAIN();
