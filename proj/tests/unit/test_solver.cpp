#include <random>

#include "doctest.h"
#include "nsyl/nogo.hpp"
#include "nsyl/solver.hpp"

using namespace nsyl;

namespace {

const Atom P("p"), Q("q"), R("r"), S("s");

FormulaSet set(std::initializer_list<Formula> fs) { return FormulaSet(fs); }

Verdict decide(const FormulaSet& phi, Bound z, Engine e) {
  return satisfiable(phi, z, e).verdict;
}

}  // namespace

TEST_CASE("small model bound") {
  const Formula f1 = Formula::more_than(0, pos(P), pos(Q));
  const Formula f2 = Formula::at_most(1, pos(P), pos(P));
  const Formula f3 = Formula::at_most(0, pos(Q), neg(R));
  const Formula f4 = Formula::more_than(1, pos(R), pos(R));
  const Formula f5 = Formula::at_most(1, pos(S), pos(S));

  CHECK(small_model_bound({f1, f2, f3, f4, f5}, 1) == 10);
  CHECK(small_model_bound({}, 1) == 1);
  CHECK(small_model_bound({f1, f2, f4}, 2) == 9);
  CHECK_THROWS_AS(small_model_bound({Formula::at_most(2, pos(P), pos(Q))}, 1),
                  InputError);
}

TEST_CASE("cell vectors expand to anonymous structures") {
  CellVector cv;
  cv.atoms = {P, Q};
  cv.counts[{P, Q}] = 2;
  cv.counts[{}] = 1;
  CHECK(cv.total() == 3);

  const Structure s = cv.expand();
  CHECK(s.domain() == std::vector<std::string>{"x0", "x1", "x2"});
  CHECK(extension(s, pos(P)).size() == 2);
  CHECK(extension(s, pos(Q)).size() == 2);
  CHECK(extension(s, neg(P)).size() == 1);
}

TEST_CASE("satisfiability basics agree across complete engines") {
  const FormulaSet sat_set = set({Formula::more_than(0, pos(P), pos(Q))});
  const FormulaSet unsat_set = set({Formula::more_than(0, pos(P), pos(Q)),
                                    Formula::at_most(0, pos(P), pos(Q))});
  const FormulaSet absurd = set({Formula::more_than(0, pos(P), neg(P))});

  for (Engine e : {Engine::Brute, Engine::Witness}) {
    const SatResult r = satisfiable(sat_set, 1, e);
    CHECK(r.verdict == Verdict::Sat);
    CHECK(r.engine == e);
    CHECK(r.nodes > 0);
    REQUIRE(r.model.has_value());
    CHECK(models_set(r.model->expand(), sat_set).holds);

    CHECK(decide(unsat_set, 1, e) == Verdict::Unsat);
    CHECK(decide(absurd, 1, e) == Verdict::Unsat);

    // The empty set is satisfied by any structure, and structures have
    // nonempty domains, so the found model has at least one element.
    const SatResult empty = satisfiable({}, 1, e);
    CHECK(empty.verdict == Verdict::Sat);
    CHECK(empty.model->total() >= 1);
  }

  // Bounds above the cap are outside the language.
  CHECK_THROWS_AS(satisfiable(set({Formula::at_most(2, pos(P), pos(Q))}), 1),
                  InputError);
}

TEST_CASE("refutation engine is sound but incomplete") {
  const FormulaSet unsat_set = set({Formula::more_than(0, pos(P), pos(Q)),
                                    Formula::at_most(0, pos(P), pos(Q))});
  const SatResult r = satisfiable(unsat_set, 1, Engine::Refute);
  CHECK(r.verdict == Verdict::Unsat);
  CHECK(r.engine == Engine::Refute);
  CHECK_FALSE(r.model.has_value());

  // Satisfiable input never refutes.
  CHECK(decide(set({Formula::more_than(0, pos(P), pos(Q))}), 1,
               Engine::Refute) == Verdict::Unknown);
  // Mixed-sign facts are ignored, so even this contradiction passes through.
  CHECK(decide(set({Formula::more_than(0, pos(P), neg(P))}), 1,
               Engine::Refute) == Verdict::Unknown);
}

TEST_CASE("refutation traces narrate the witness chain") {
  using Kind = TraceStep::Kind;

  const RefutationResult direct =
      refute_witness_chain(set({Formula::more_than(0, pos(P), pos(Q)),
                                Formula::at_most(0, pos(P), pos(Q))}));
  REQUIRE(direct.refuted);
  REQUIRE(direct.trace.size() == 2);
  CHECK(direct.trace[0].kind == Kind::Witness);
  CHECK(direct.trace[1].kind == Kind::Violation);
  CHECK(direct.trace[1].cause == Formula::at_most(0, pos(P), pos(Q)));

  // Subset saturation: the witness for p picks up q, then violates.
  const RefutationResult via_subset =
      refute_witness_chain(set({Formula::more_than(0, pos(P), pos(P)),
                                Formula::at_most(0, pos(P), neg(Q)),
                                Formula::at_most(0, pos(Q), pos(Q))}));
  REQUIRE(via_subset.refuted);
  REQUIRE(via_subset.trace.size() == 3);
  CHECK(via_subset.trace[1].kind == Kind::Subset);
  CHECK(via_subset.trace[2].cause == Formula::at_most(0, pos(Q), pos(Q)));

  // Budget-forced merge: two witnesses in a one-element region coincide.
  const FormulaSet merge_set = set({Formula::more_than(0, pos(P), pos(Q)),
                                    Formula::more_than(0, pos(P), pos(R)),
                                    Formula::at_most(1, pos(P), pos(P)),
                                    Formula::at_most(0, pos(Q), pos(R))});
  const RefutationResult via_merge = refute_witness_chain(merge_set);
  REQUIRE(via_merge.refuted);
  REQUIRE(via_merge.trace.size() == 4);
  CHECK(via_merge.trace[2].kind == Kind::Merge);
  CHECK(via_merge.trace[3].kind == Kind::Violation);
  CHECK(via_merge.trace[3].cause == Formula::at_most(0, pos(Q), pos(R)));
  // The complete engines agree that the merge case is unsatisfiable.
  CHECK(decide(merge_set, 1, Engine::Brute) == Verdict::Unsat);
  CHECK(decide(merge_set, 1, Engine::Witness) == Verdict::Unsat);
}

TEST_CASE("refutation handles the generated families") {
  const FormulaSet gamma = nogo::gamma(4, 1, Family::SDagger);
  const RefutationResult r = refute_witness_chain(gamma);
  REQUIRE(r.refuted);
  CHECK(r.trace.back().kind == TraceStep::Kind::Violation);
  CHECK(r.trace.back().cause ==
        Formula::at_most(0, pos(Atom("p_0")), pos(Atom("p_7"))));

  // Every variant is satisfiable, so the sound engine must stay silent.
  const FormulaSet variant = nogo::gamma_t(4, 1, 1, Family::SDagger);
  CHECK_FALSE(refute_witness_chain(variant).refuted);
}

TEST_CASE("entailment") {
  const FormulaSet darii_premises = set({Formula::at_most(0, pos(Q), neg(P)),
                                         Formula::more_than(0, pos(R), pos(Q))});
  const Formula conclusion = Formula::more_than(0, pos(R), pos(P));
  for (Engine e : {Engine::Brute, Engine::Witness}) {
    CHECK(entails(darii_premises, conclusion, 1, e));
    CHECK_FALSE(entails(set({Formula::more_than(0, pos(R), pos(Q))}),
                        conclusion, 1, e));
  }
  // Unsatisfiable premises entail everything.
  CHECK(entails(set({Formula::more_than(0, pos(P), neg(P))}),
                Formula::more_than(0, pos(Q), pos(Q)), 1));
  // The negated conclusion must stay within the bound cap.
  CHECK_THROWS_AS(entails({}, Formula::at_most(2, pos(P), pos(Q)), 1),
                  InputError);
}

TEST_CASE("brute engine caps") {
  // Atom cap: six atoms exceed the default of five.
  const FormulaSet wide = set({Formula::more_than(0, pos(Atom("a")), pos(Atom("b"))),
                               Formula::more_than(0, pos(Atom("c")), pos(Atom("d"))),
                               Formula::more_than(0, pos(Atom("e")), pos(Atom("f")))});
  CHECK_THROWS_AS(satisfiable(wide, 1, Engine::Brute), InputError);
  CHECK(decide(wide, 1, Engine::Witness) == Verdict::Sat);
  SolverConfig relaxed;
  relaxed.brute_atom_cap = 6;
  CHECK(satisfiable(wide, 1, Engine::Brute, relaxed).verdict == Verdict::Sat);

  // Cell cap: the default z+1 per cell already preserves satisfiability;
  // raising it must not change any verdict.
  std::mt19937 rng(411);
  const std::vector<Literal> lits{pos(P), neg(P), pos(Q), neg(Q), pos(R)};
  for (int trial = 0; trial < 60; ++trial) {
    FormulaSet phi;
    const Bound z = 1 + rng() % 2;
    const std::size_t size = 1 + rng() % 4;
    while (phi.size() < size)
      phi.insert(Formula(rng() % 2 ? Quant::AtMost : Quant::MoreThan,
                         rng() % (z + 1), lits[rng() % lits.size()],
                         lits[rng() % lits.size()]));
    SolverConfig roomy;
    roomy.brute_cell_cap = 2 * z + 3;
    const Verdict capped = decide(phi, z, Engine::Brute);
    CHECK(capped == satisfiable(phi, z, Engine::Brute, roomy).verdict);
    CHECK(capped == decide(phi, z, Engine::Witness));
  }
}

TEST_CASE("node budgets abort runaway searches") {
  SolverConfig tight;
  tight.node_budget = 1;
  const FormulaSet phi = set({Formula::more_than(0, pos(P), pos(Q)),
                              Formula::more_than(0, pos(R), pos(S))});
  CHECK_THROWS_AS(satisfiable(phi, 1, Engine::Brute, tight),
                  ResourceLimitError);
  CHECK_THROWS_AS(satisfiable(phi, 1, Engine::Witness, tight),
                  ResourceLimitError);
}

TEST_CASE("triple-cap reduction") {
  const Formula cap = Formula::at_most(3, pos(P), pos(P));

  // Sets already inside the target language pass through unchanged.
  const FormulaSet plain = set({Formula::more_than(0, pos(P), pos(Q)),
                                Formula::at_most(1, pos(P), neg(Q))});
  CHECK(reduce_t_to_s1(plain) == plain);

  const FormulaSet out = reduce_t_to_s1({cap});
  CHECK(out.size() == 3);
  const Atom o0("o__g0"), o1("o__g1");
  CHECK(out.contains(Formula::at_most(1, pos(P), neg(o0))));
  CHECK(out.contains(Formula::at_most(1, pos(o0), pos(o1))));
  CHECK(out.contains(Formula::at_most(1, pos(o0), neg(o1))));
  for (const Formula& f : out) CHECK(in_language(f, LanguageId::s(1)));

  // Helper names already in use are skipped, not reused.
  const FormulaSet clash =
      reduce_t_to_s1({cap, Formula::more_than(0, pos(o0), pos(o0))});
  CHECK(atoms_of(clash).contains(Atom("o__g2")));

  // Everything else is outside the accepted input language.
  CHECK_THROWS_AS(reduce_t_to_s1({Formula::at_most(2, pos(P), pos(Q))}),
                  InputError);
  CHECK_THROWS_AS(reduce_t_to_s1({Formula::at_most(3, pos(P), pos(Q))}),
                  InputError);
  CHECK_THROWS_AS(reduce_t_to_s1({Formula::more_than(3, pos(P), pos(P))}),
                  InputError);

  // The rewrite preserves satisfiability; |p| <= 3 alone is satisfiable,
  // and pinning four distinct p-regions on top of the reduced set is not.
  CHECK(decide(out, 1, Engine::Witness) == Verdict::Sat);
}

TEST_CASE("three-colourability encoding") {
  const Graph k3 = Graph::make(3, {{1, 2}, {2, 3}, {1, 3}});
  const Graph k4 = Graph::make(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  const Graph c5 = Graph::make(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}});

  const FormulaSet k3_enc = reduce_3col(k3);
  CHECK(k3_enc.size() == 1 + 3 * 3 + 3);
  CHECK(decide(k3_enc, 3, Engine::Witness) == Verdict::Sat);
  CHECK(decide(reduce_3col(k4), 3, Engine::Witness) == Verdict::Unsat);
  CHECK(decide(reduce_3col(c5), 3, Engine::Witness) == Verdict::Sat);

  // Composed with the triple-cap rewrite, the question drops to bound 1.
  CHECK(decide(reduce_t_to_s1(k3_enc), 1, Engine::Witness) == Verdict::Sat);
  CHECK(decide(reduce_t_to_s1(reduce_3col(k4)), 1, Engine::Witness) ==
        Verdict::Unsat);

  CHECK_THROWS_AS(reduce_3col(Graph{}), InputError);
}
