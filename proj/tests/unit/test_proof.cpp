#include "doctest.h"
#include "nsyl/parser.hpp"
#include "nsyl/proof.hpp"

using namespace nsyl;

namespace {

const Atom O("o"), P("p"), Q("q"), R("r");

Rule darii() { return builtin_rulesets(0).at("darii_ferio").rules[0]; }
Rule ferio() { return builtin_rulesets(0).at("darii_ferio").rules[1]; }

// Contradictory antecedents make any consequent sound; this one releases an
// absurdity that reductio can discharge against.
Rule absurdity_release() {
  return Rule{"collide",
              {Formula::at_most(0, pos(P), pos(O)),
               Formula::more_than(0, pos(P), pos(O))},
              Formula::more_than(0, pos(P), neg(P))};
}

}  // namespace

TEST_CASE("substitution instances") {
  const Rule d = darii();
  CHECK(d.width() == 2);
  CHECK(d.atoms() == std::set<Atom>{O, P, Q});

  const Atom S("s"), T("t"), U("u");
  const Rule inst = instantiate(d, {{Q, S}, {O, T}, {P, U}});
  CHECK(inst.antecedents ==
        FormulaSet{Formula::at_most(0, pos(S), neg(T)),
                   Formula::more_than(0, pos(U), pos(S))});
  CHECK(inst.consequent == Formula::more_than(0, pos(U), pos(T)));

  // Substitutions need not be injective.
  const Rule collapsed = instantiate(d, {{Q, S}, {O, S}, {P, S}});
  CHECK(collapsed.antecedents ==
        FormulaSet{Formula::at_most(0, pos(S), neg(S)),
                   Formula::more_than(0, pos(S), pos(S))});
  CHECK(collapsed.consequent == Formula::more_than(0, pos(S), pos(S)));

  // Instances re-canonicalize argument order.
  CHECK(apply_substitution({{P, S}, {Q, Atom("a")}},
                           Formula::more_than(0, pos(P), pos(Q))) ==
        Formula::more_than(0, pos(Atom("a")), pos(S)));

  CHECK_THROWS_AS(instantiate(d, {{Q, S}, {O, T}}), InputError);
}

TEST_CASE("direct closure") {
  const RuleSet x = builtin_rulesets(0).at("darii_ferio");
  const FormulaSet theta{Formula::at_most(0, pos(Q), neg(O)),
                         Formula::more_than(0, pos(P), pos(Q))};
  const std::set<Atom> atoms{O, P, Q};

  const FormulaSet k = direct_closure(theta, x, atoms);
  CHECK(k.size() == 3);
  CHECK(k.contains(Formula::more_than(0, pos(P), pos(O))));
  for (const Formula& f : theta) CHECK(k.contains(f));

  // Closing a closure adds nothing.
  CHECK(direct_closure(k, x, atoms) == k);

  // Bounded transfer steps subtract the slack.
  const RuleSet transfer = builtin_rulesets(1).at("transfer_z");
  const FormulaSet hi{Formula::at_most(1, pos(Q), neg(O)),
                      Formula::more_than(1, pos(P), pos(Q))};
  CHECK(direct_closure(hi, transfer, atoms)
            .contains(Formula::more_than(0, pos(P), pos(O))));

  CHECK_THROWS_AS(direct_closure(theta, x, {}), InputError);
  CHECK_THROWS_AS(direct_closure(theta, x, {O, P}), InputError);
}

TEST_CASE("direct derivations") {
  const RuleSet x = builtin_rulesets(0).at("darii_ferio");
  const FormulaSet theta{Formula::at_most(0, pos(Q), neg(O)),
                         Formula::more_than(0, pos(P), pos(Q)),
                         Formula::at_most(0, pos(O), pos(R))};

  // A premise is its own derivation.
  const auto leaf =
      derive_direct(theta, x, Formula::more_than(0, pos(P), pos(Q)));
  REQUIRE(leaf.has_value());
  CHECK((*leaf)->kind() == DerivationNode::Kind::Premise);
  CHECK(derivation_size(*leaf) == 1);

  // Two chained applications, rendered as an indented tree.
  const Formula goal = Formula::more_than(0, pos(P), neg(R));
  const auto d = derive_direct(theta, x, goal);
  REQUIRE(d.has_value());
  CHECK((*d)->conclusion() == goal);
  CHECK(derivation_size(*d) == 5);
  CHECK(verify_derivation(*d, theta, x).ok);
  CHECK(render_derivation(*d) ==
        ">0(p,~r)   (ferio)\n"
        "  <=0(o,r)   premise\n"
        "  >0(o,p)   (darii)\n"
        "    <=0(~o,q)   premise\n"
        "    >0(p,q)   premise\n");

  CHECK_FALSE(derive_direct(theta, x, Formula::more_than(0, pos(Q), pos(R)))
                  .has_value());
  CHECK_FALSE(derive_direct({}, x, goal).has_value());
}

TEST_CASE("derivations survive atom renaming") {
  const RuleSet x = builtin_rulesets(0).at("darii_ferio");
  const FormulaSet theta{Formula::at_most(0, pos(Q), neg(O)),
                         Formula::more_than(0, pos(P), pos(Q)),
                         Formula::at_most(0, pos(O), pos(R))};
  const Formula goal = Formula::more_than(0, pos(P), neg(R));
  const Derivation d = *derive_direct(theta, x, goal);

  const std::map<Atom, Atom> map{
      {O, Atom("w")}, {P, Atom("x")}, {Q, Atom("y")}, {R, Atom("z")}};
  const Derivation renamed = rename_atoms(d, map);
  CHECK(renamed->conclusion() ==
        Formula::more_than(0, pos(Atom("x")), neg(Atom("z"))));
  CHECK(derivation_size(renamed) == derivation_size(d));

  FormulaSet renamed_theta;
  for (const Formula& f : theta)
    renamed_theta.insert(
        Formula(f.quant(), f.bound(),
                Literal(map.at(f.first().atom), f.first().positive),
                Literal(map.at(f.second().atom), f.second().positive)));
  CHECK(verify_derivation(renamed, renamed_theta, x).ok);

  // Non-injective renamings still yield legal instances.
  const std::map<Atom, Atom> squash{{O, O}, {P, P}, {Q, Q}, {R, Q}};
  const Derivation squashed = rename_atoms(d, squash);
  FormulaSet squashed_theta;
  for (const Formula& f : theta)
    squashed_theta.insert(
        Formula(f.quant(), f.bound(),
                Literal(squash.at(f.first().atom), f.first().positive),
                Literal(squash.at(f.second().atom), f.second().positive)));
  CHECK(verify_derivation(squashed, squashed_theta, x).ok);

  CHECK_THROWS_AS(rename_atoms(d, {{O, O}}), InputError);
}

TEST_CASE("indirect derivations discharge refuted assumptions") {
  const RuleSet x{{darii(), absurdity_release()}};
  const FormulaSet theta{Formula::at_most(0, pos(Q), neg(O)),
                         Formula::at_most(0, pos(P), pos(O))};
  const Formula goal = Formula::at_most(0, pos(P), pos(Q));

  // Rule instances alone never reach the goal.
  CHECK_FALSE(derive_direct(theta, x, goal).has_value());

  const auto d = derive_indirect(theta, x, goal);
  REQUIRE(d.has_value());
  CHECK((*d)->conclusion() == goal);
  CHECK(verify_derivation(*d, theta, x).ok);

  std::size_t raa_nodes = 0;
  auto count = [&](auto&& self, const Derivation& node) -> void {
    if (node->kind() == DerivationNode::Kind::Raa) ++raa_nodes;
    for (const Derivation& c : node->children()) self(self, c);
  };
  count(count, *d);
  CHECK(raa_nodes >= 1);

  // When a direct derivation exists, the indirect search returns it.
  const FormulaSet direct_theta{Formula::at_most(0, pos(Q), neg(O)),
                                Formula::more_than(0, pos(P), pos(Q))};
  const auto straight =
      derive_indirect(direct_theta, x, Formula::more_than(0, pos(P), pos(O)));
  REQUIRE(straight.has_value());
  CHECK((*straight)->kind() == DerivationNode::Kind::RuleApp);

  CHECK_FALSE(
      derive_indirect({}, x, Formula::more_than(0, pos(P), pos(O))).has_value());

  DeriveLimits tight;
  tight.max_contexts = 1;
  CHECK_THROWS_AS(derive_indirect(theta, x, goal, tight), ResourceLimitError);
}

TEST_CASE("verification accepts zero-discharge reductio") {
  const RuleSet x{{darii()}};
  const Formula absurd = Formula::more_than(0, pos(P), neg(P));
  const FormulaSet theta{absurd};
  const Derivation d = DerivationNode::raa(
      Formula::at_most(0, pos(Q), pos(Q)), 7, DerivationNode::premise(absurd));
  CHECK(verify_derivation(d, theta, x).ok);
}

TEST_CASE("verification rejects malformed trees") {
  const RuleSet x{{darii()}};
  const FormulaSet theta{Formula::at_most(0, pos(Q), neg(O)),
                         Formula::more_than(0, pos(P), pos(Q))};
  const Substitution id{{O, O}, {P, P}, {Q, Q}};

  auto reject = [&](const Derivation& d, const char* fragment) {
    const VerificationResult r = verify_derivation(d, theta, x);
    CHECK_FALSE(r.ok);
    CHECK(r.diagnostic.find(fragment) != std::string::npos);
  };

  reject(nullptr, "empty");

  reject(DerivationNode::premise(Formula::more_than(0, pos(P), pos(O))),
         "not among the premises");

  // Discharge tag with no enclosing reductio.
  reject(DerivationNode::premise(Formula::more_than(0, pos(P), pos(Q)), 3),
         "not bound");

  // Rule outside the set.
  reject(DerivationNode::rule_app(
             ferio(), id,
             {DerivationNode::premise(Formula::at_most(0, pos(Q), pos(O))),
              DerivationNode::premise(Formula::more_than(0, pos(P), pos(Q)))}),
         "not in the rule set");

  // Missing antecedent child.
  reject(DerivationNode::rule_app(
             darii(), id,
             {DerivationNode::premise(Formula::at_most(0, pos(Q), neg(O)))}),
         "missing an antecedent");

  // Child concluding something that is not an instantiated antecedent.
  reject(DerivationNode::rule_app(
             darii(), id,
             {DerivationNode::premise(Formula::at_most(0, pos(Q), neg(O))),
              DerivationNode::premise(Formula::more_than(0, pos(P), pos(O)))}),
         "not an instantiated antecedent");

  // Reductio over a child that concludes no absurdity.
  reject(DerivationNode::raa(
             Formula::at_most(0, pos(P), pos(P)), 1,
             DerivationNode::premise(Formula::more_than(0, pos(P), pos(Q)))),
         "not an absurdity");

  // Discharged formula must match the enclosing assumption.
  reject(DerivationNode::raa(
             Formula::at_most(0, pos(P), pos(P)), 1,
             DerivationNode::premise(Formula::more_than(0, pos(Q), neg(Q)), 1)),
         "differs from the assumption");

  // Tag shadowing.
  const Formula absurd = Formula::more_than(0, pos(P), neg(P));
  reject(DerivationNode::raa(
             Formula::at_most(0, pos(P), pos(P)), 1,
             DerivationNode::raa(absurd, 1,
                                 DerivationNode::premise(absurd, 1))),
         "shadows");
}

TEST_CASE("stock rule sets") {
  const auto at0 = builtin_rulesets(0);
  REQUIRE(at0.contains("darii_ferio"));
  REQUIRE(at0.contains("transfer_z"));
  CHECK(at0.at("darii_ferio").rules.size() == 2);
  CHECK(at0.at("darii_ferio").max_width() == 2);
  CHECK(at0.at("transfer_z").rules.size() == 2);
  CHECK(builtin_rulesets(1).at("transfer_z").rules.size() == 6);
  CHECK(builtin_rulesets(2).at("transfer_z").rules.size() == 12);

  for (Bound z : {Bound{0}, Bound{1}, Bound{2}}) {
    for (const auto& [name, rs] : builtin_rulesets(z))
      for (const Rule& r : rs.rules) {
        CAPTURE(name);
        CAPTURE(r.name);
        CHECK(check_rule_sound(r, std::max<Bound>(z, 1)).sound);
      }
  }
}

TEST_CASE("soundness checking produces countermodels") {
  // Darii with its conclusion polarity flipped is invalid.
  Rule broken = darii();
  broken.consequent = Formula::more_than(0, pos(P), neg(O));
  const RuleSoundness r = check_rule_sound(broken, 1);
  CHECK_FALSE(r.sound);
  REQUIRE(r.countermodel.has_value());
  for (const Formula& a : broken.antecedents)
    CHECK(evaluate(*r.countermodel, a));
  CHECK_FALSE(evaluate(*r.countermodel, broken.consequent));

  CHECK(check_rule_sound(darii(), 1).sound);
  CHECK(check_rule_sound(ferio(), 2).sound);
  // Vacuous soundness: contradictory antecedents entail anything.
  CHECK(check_rule_sound(absurdity_release(), 1).sound);
}
