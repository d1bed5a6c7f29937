#include "doctest.h"
#include "nsyl/nogo.hpp"
#include "nsyl/semantics.hpp"
#include "nsyl/syntax.hpp"

using namespace nsyl;

namespace {

const Atom P("p"), Q("q"), R("r");

Structure tiny() {
  return Structure({"x", "y", "z"}, {{P, {"x", "y"}}, {Q, {"y"}}});
}

}  // namespace

TEST_CASE("structure construction validates its input") {
  CHECK_THROWS_AS(Structure({}, {}), InputError);
  CHECK_THROWS_AS(Structure({"x", "x"}, {}), InputError);
  CHECK_THROWS_AS(Structure({"x"}, {{P, {"ghost"}}}), InputError);
  const Structure ok({"x"}, {});
  CHECK_FALSE(ok.holds(P, "x"));
}

TEST_CASE("literal extensions") {
  const Structure s = tiny();
  CHECK(extension(s, pos(P)) == std::set<std::string>{"x", "y"});
  CHECK(extension(s, neg(P)) == std::set<std::string>{"z"});
  // Atoms missing from the interpretation denote the empty set.
  CHECK(extension(s, pos(R)).empty());
  CHECK(extension(s, neg(R)) == std::set<std::string>{"x", "y", "z"});
}

TEST_CASE("formula evaluation counts the overlap") {
  const Structure s = tiny();
  // |p ∩ q| = 1
  CHECK(evaluate(s, Formula::at_most(1, pos(P), pos(Q))));
  CHECK_FALSE(evaluate(s, Formula::at_most(0, pos(P), pos(Q))));
  CHECK(evaluate(s, Formula::more_than(0, pos(P), pos(Q))));
  CHECK_FALSE(evaluate(s, Formula::more_than(1, pos(P), pos(Q))));
  // |~p ∩ q| = 0, |p ∩ ~q| = 1, |~p ∩ ~q| = 1
  CHECK(evaluate(s, Formula::at_most(0, neg(P), pos(Q))));
  CHECK(evaluate(s, Formula::more_than(0, pos(P), neg(Q))));
  CHECK(evaluate(s, Formula::more_than(0, neg(P), neg(Q))));
  // Repeated argument measures the literal itself: |p| = 2.
  CHECK(evaluate(s, Formula::more_than(1, pos(P), pos(P))));
  CHECK_FALSE(evaluate(s, Formula::more_than(2, pos(P), pos(P))));
  // An atom never overlaps its own complement.
  CHECK(evaluate(s, Formula::at_most(0, pos(P), neg(P))));
  CHECK_FALSE(evaluate(s, Formula::more_than(0, pos(P), neg(P))));
}

TEST_CASE("negate flips satisfaction pointwise") {
  const Structure s = tiny();
  for (Bound i = 0; i <= 3; ++i)
    for (const Literal& a : {pos(P), neg(P), pos(Q)})
      for (const Literal& b : {pos(Q), neg(R)}) {
        const Formula f = Formula::at_most(i, a, b);
        CHECK(evaluate(s, f) != evaluate(s, negate(f)));
      }
}

TEST_CASE("models_set reports the first failure in canonical order") {
  const Structure s = tiny();
  const Formula bad_early = Formula::at_most(0, pos(P), pos(P));
  const Formula bad_late = Formula::at_most(0, pos(Q), pos(Q));
  const Formula good = Formula::more_than(0, pos(P), pos(Q));

  CHECK(models_set(s, {good}).holds);
  CHECK_FALSE(models_set(s, {good}).failing.has_value());

  const ModelCheck r = models_set(s, {good, bad_late, bad_early});
  CHECK_FALSE(r.holds);
  CHECK(r.failing == bad_early);

  CHECK(models_set(s, {}).holds);
}

TEST_CASE("theory_of lists exactly the satisfied formulas") {
  const Structure s = tiny();
  const std::set<Atom> atoms{P, Q};
  const LanguageId lang = LanguageId::sdagger(1);
  const FormulaSet t = theory_of(s, atoms, lang);

  for (const Formula& f : enumerate_language(atoms, lang))
    CHECK(t.contains(f) == evaluate(s, f));

  // The theory decides every formula of the language exactly once.
  const CompletenessReport rep = is_complete_set(t, atoms, lang);
  CHECK(rep.complete);
  CHECK(rep.exactly_one);

  CHECK_THROWS_AS(theory_of(s, {}, lang), InputError);
  CHECK_THROWS_AS(theory_of(s, atoms, LanguageId::n()), InputError);
}

TEST_CASE("generated variant models separate the family from its variant") {
  const Bound n = 4, z = 1, t = 1;
  const Structure s = nogo::witness_model(n, t, z);
  const FormulaSet gamma = nogo::gamma(n, z, Family::SDagger);
  const FormulaSet variant = nogo::gamma_t(n, t, z, Family::SDagger);

  CHECK(models_set(s, variant).holds);

  const ModelCheck against_family = models_set(s, gamma);
  CHECK_FALSE(against_family.holds);
  // The swapped-out formula with the least canonical index.
  CHECK(against_family.failing ==
        Formula::more_than(0, pos(Atom("p_0")), pos(Atom("p_3"))));

  CHECK(evaluate(s, Formula::more_than(1, pos(Atom("q_2")), pos(Atom("q_3")))));
  CHECK_FALSE(evaluate(s, Formula::at_most(1, pos(Atom("q_2")), pos(Atom("q_3")))));

  const std::vector<Atom> fam = nogo::family_atoms(n);
  const std::set<Atom> atoms(fam.begin(), fam.end());
  CHECK(theory_of(s, atoms, LanguageId::sdagger(z)) == variant);
}
