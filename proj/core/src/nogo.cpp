#include "nsyl/nogo.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nsyl/parser.hpp"

namespace nsyl::nogo {

namespace {

Atom p(Bound i) { return Atom("p_" + std::to_string(i)); }
Atom q(Bound i) { return Atom("q_" + std::to_string(i)); }

void require_n(Bound n) {
  if (n < 4) throw InputError("the counterexample family requires n >= 4");
}

void require_z(Bound z) {
  if (z < 1) throw InputError("the counterexample family requires z >= 1");
}

void require_family(Family lang) {
  if (lang != Family::S && lang != Family::SDagger)
    throw InputError("the counterexample family lives in the bounded languages");
}

void require_t(Bound n, Bound t) {
  if (t < 1 || t > n - 2)
    throw InputError("the variant index must satisfy 1 <= t <= n-2");
}

std::set<Atom> family_atom_set(Bound n) {
  auto v = family_atoms(n);
  return std::set<Atom>(v.begin(), v.end());
}

bool has_absurdity(const FormulaSet& phi) {
  return std::any_of(phi.begin(), phi.end(),
                     [](const Formula& f) { return is_absurdity(f); });
}

std::string num(Bound v) { return std::to_string(v); }

class Timer {
public:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

}  // namespace

std::vector<Atom> family_atoms(Bound n) {
  require_n(n);
  std::vector<Atom> out;
  out.reserve(4 * n + 2);
  for (Bound i = 0; i < 2 * n; ++i) out.push_back(p(i));
  for (Bound i = 0; i < 2 * n + 2; ++i) out.push_back(q(i));
  return out;
}

FormulaSet gamma(Bound n, Bound z, Family lang) {
  require_n(n);
  require_z(z);
  require_family(lang);

  const Bound P = 2 * n;      // p indices run over 0..P-1
  const Bound Q = 2 * n + 2;  // q indices run over 0..Q-1
  const bool dagger = lang == Family::SDagger;

  FormulaSet out;
  auto one = [&](Literal a, Literal b) {
    out.merge(expand_star(StarKind::Exactly, 1, z, a, b));
  };
  auto none = [&](Literal a, Literal b) {
    out.merge(expand_star(StarKind::AtMost, 0, z, a, b));
  };
  auto many = [&](Literal a, Literal b) {
    out.merge(expand_star(StarKind::MoreThan, z, z, a, b));
  };

  // Pairs of p-atoms: a chain of unique overlaps p_i/p_{i+1}, reinforced by
  // unique skips p_i/p_{i+3} at even i, with the two chain ends barred from
  // meeting. Every remaining pair is populated beyond the bound cap.
  for (Bound i = 0; i + 1 < P; ++i) one(pos(p(i)), pos(p(i + 1)));
  for (Bound i = 0; i + 3 < P; i += 2) one(pos(p(i)), pos(p(i + 3)));
  none(pos(p(0)), pos(p(P - 1)));
  for (Bound i = 0; i < P; ++i)
    for (Bound j = i; j < P; ++j)
      if (j != i + 1 && (i % 2 == 1 || j != i + 3) && (i != 0 || j != P - 1))
        many(pos(p(i)), pos(p(j)));
  for (Bound i = 0; i < P; ++i) none(pos(p(i)), neg(p(i)));
  for (Bound i = 0; i < P; ++i)
    for (Bound j = 0; j < P; ++j)
      if (i != j) many(pos(p(i)), neg(p(j)));
  if (dagger)
    for (Bound i = 0; i < P; ++i)
      for (Bound j = i; j < P; ++j) many(neg(p(i)), neg(p(j)));

  // Pairs of q-atoms: unique overlaps only at even/odd couples q_{2h}/q_{2h+1};
  // everything else is populated.
  for (Bound i = 0; i + 1 < Q; i += 2) one(pos(q(i)), pos(q(i + 1)));
  for (Bound i = 0; i < Q; ++i)
    for (Bound j = i; j < Q; ++j)
      if (i % 2 == 1 || j != i + 1) many(pos(q(i)), pos(q(j)));
  for (Bound i = 0; i < Q; ++i) none(pos(q(i)), neg(q(i)));
  for (Bound i = 0; i < Q; ++i)
    for (Bound j = 0; j < Q; ++j)
      if (i != j) many(pos(q(i)), neg(q(j)));
  if (dagger)
    for (Bound i = 0; i < Q; ++i)
      for (Bound j = i; j < Q; ++j) many(neg(q(i)), neg(q(j)));

  // Mixed pairs: each p_i sits inside q_i and q_{i+2}, uniquely couples with
  // its q-neighbours, and meets every other q-literal in a populated pair.
  for (Bound i = 0; i + 1 < P; i += 2) one(pos(p(i + 1)), pos(q(i)));
  for (Bound i = 0; i < P; ++i) one(pos(p(i)), pos(q(i + 1)));
  for (Bound i = 0; i + 1 < P; i += 2) one(pos(p(i)), pos(q(i + 3)));
  for (Bound i = 0; i < P; ++i)
    for (Bound j = 0; j < Q; ++j)
      if (j != i + 1 && (i % 2 == 1 || j != i + 3) && (j % 2 == 1 || i != j + 1))
        many(pos(p(i)), pos(q(j)));
  for (Bound i = 0; i < P; ++i) none(pos(p(i)), neg(q(i)));
  for (Bound i = 0; i < P; ++i) none(pos(p(i)), neg(q(i + 2)));
  for (Bound i = 0; i < P; ++i)
    for (Bound j = 0; j < Q; ++j)
      if (j != i && j != i + 2) many(pos(p(i)), neg(q(j)));
  for (Bound i = 0; i < P; ++i)
    for (Bound j = 0; j < Q; ++j) many(neg(p(i)), pos(q(j)));
  if (dagger)
    for (Bound i = 0; i < P; ++i)
      for (Bound j = 0; j < Q; ++j) many(neg(p(i)), neg(q(j)));

  return out;
}

FormulaSet gamma_t(Bound n, Bound t, Bound z, Family lang) {
  require_n(n);
  require_t(n, t);
  FormulaSet out = gamma(n, z, lang);

  // Break the chain at column t: the overlap p_{2t-1}/p_{2t} and the skip
  // p_{2t-2}/p_{2t+1} become empty, and the budget on q_{2t}/q_{2t+1} grows
  // to two so that both chain halves find a home.
  const Formula dropped[] = {
      Formula::more_than(0, pos(p(2 * t - 1)), pos(p(2 * t))),
      Formula::more_than(0, pos(p(2 * t - 2)), pos(p(2 * t + 1))),
      Formula::at_most(1, pos(q(2 * t)), pos(q(2 * t + 1)))};
  const Formula added[] = {
      Formula::at_most(0, pos(p(2 * t - 1)), pos(p(2 * t))),
      Formula::at_most(0, pos(p(2 * t - 2)), pos(p(2 * t + 1))),
      Formula::more_than(1, pos(q(2 * t)), pos(q(2 * t + 1)))};
  for (const Formula& f : dropped) out.erase(f);
  for (const Formula& f : added) out.insert(f);
  return out;
}

FormulaSet unsat_core(Bound n, Bound z) {
  require_n(n);
  require_z(z);

  const Bound P = 2 * n;
  const Bound Q = 2 * n + 2;
  FormulaSet out;
  auto one = [&](Literal a, Literal b) {
    out.merge(expand_star(StarKind::Exactly, 1, z, a, b));
  };
  auto none = [&](Literal a, Literal b) {
    out.merge(expand_star(StarKind::AtMost, 0, z, a, b));
  };

  // The p-chain, the q-budgets, the p-to-q containments, and the barrier
  // between the chain ends; already unsatisfiable without the rest.
  for (Bound i = 0; i + 1 < P; ++i) one(pos(p(i)), pos(p(i + 1)));
  none(pos(p(0)), pos(p(P - 1)));
  for (Bound i = 0; i + 1 < Q; i += 2) one(pos(q(i)), pos(q(i + 1)));
  for (Bound i = 0; i < P; ++i) none(pos(p(i)), neg(q(i)));
  for (Bound i = 0; i < P; ++i) none(pos(p(i)), neg(q(i + 2)));
  return out;
}

Structure witness_model(Bound n, Bound t, Bound z) {
  require_n(n);
  require_z(z);
  require_t(n, t);

  const Bound P = 2 * n;
  const Bound Q = 2 * n + 2;

  std::vector<std::string> domain;
  std::map<Atom, std::set<std::string>> interp;
  auto put = [&](std::string id, const std::vector<Atom>& atoms) {
    for (const Atom& a : atoms) interp[a].insert(id);
    domain.push_back(std::move(id));
  };
  auto copies = [&](const std::string& stem, Bound i, Bound j,
                    const std::vector<Atom>& atoms) {
    for (Bound k = 0; k <= z; ++k)
      put(stem + "_" + num(i) + "_" + num(j) + "_" + num(k), atoms);
  };

  // The two chain halves: a carries columns below t, a' the rest. They
  // overlap exactly on q_{2t} and q_{2t+1}.
  {
    std::vector<Atom> atoms;
    for (Bound i = 0; i < 2 * t; ++i) atoms.push_back(p(i));
    for (Bound i = 0; i < 2 * t + 2; ++i) atoms.push_back(q(i));
    put("a", atoms);
  }
  {
    std::vector<Atom> atoms;
    for (Bound i = 2 * t; i < P; ++i) atoms.push_back(p(i));
    for (Bound i = 2 * t; i < Q; ++i) atoms.push_back(q(i));
    put("a'", atoms);
  }

  // Fillers pushing every populated pair past the bound cap: z+1 copies
  // each, with index conditions matching the populated-pair conditions so
  // that no unique overlap gains an extra member.
  for (Bound i = 0; i < P; ++i)
    for (Bound j = i; j < P; ++j)
      if (j != i + 1 && (i % 2 == 1 || j != i + 3) && (i != 0 || j != P - 1))
        copies("b", i, j, {p(i), q(i), q(i + 2), p(j), q(j), q(j + 2)});
  for (Bound i = 0; i < P; ++i)
    for (Bound j = 0; j < Q; ++j)
      if (j != i + 1 && (i % 2 == 1 || j != i + 3) && (j % 2 == 1 || i != j + 1))
        copies("c", i, j, {p(i), q(i), q(i + 2), q(j)});
  for (Bound i = 0; i < Q; ++i)
    for (Bound j = i; j < Q; ++j)
      if (i % 2 == 1 || j != i + 1) copies("d", i, j, {q(i), q(j)});

  // Two atomless elements keep the all-negative pairs populated.
  put("e", {});
  put("e'", {});

  return Structure(std::move(domain), std::move(interp));
}

ClaimReport check_claim(Bound n, Bound z, Family lang, int id,
                        const SolverConfig& config) {
  require_n(n);
  require_z(z);
  require_family(lang);
  if (id < 1 || id > 4) throw InputError("claim id must be 1..4");

  Timer timer;
  ClaimReport rep;
  rep.id = id;

  switch (id) {
    case 1: {
      rep.title = "the family is complete, exactly-one, and absurdity-free";
      const FormulaSet g = gamma(n, z, lang);
      const auto atoms = family_atom_set(n);
      const auto cr = is_complete_set(g, atoms, LanguageId{lang, z});
      const bool clean = !has_absurdity(g);
      rep.verdict = cr.complete && cr.exactly_one && clean;
      rep.details.push_back(num(g.size()) + " formulas over " +
                            num(atoms.size()) + " atoms");
      rep.details.push_back(std::string("complete: ") +
                            (cr.complete ? "yes" : "no") + ", exactly-one: " +
                            (cr.exactly_one ? "yes" : "no") + ", absurdities: " +
                            (clean ? "none" : "present"));
      if (!cr.missing.empty())
        rep.details.push_back("undetermined: " + render(*cr.missing.begin()));
      if (!cr.doubled.empty())
        rep.details.push_back("contradictory: " + render(*cr.doubled.begin()));
      break;
    }
    case 2: {
      rep.title = "the family is unsatisfiable";
      const auto rr = refute_witness_chain(gamma(n, z, lang));
      const FormulaSet core = unsat_core(n, z);
      const auto sr = satisfiable(core, z, Engine::Witness, config);
      rep.verdict = rr.refuted && sr.verdict == Verdict::Unsat;
      rep.details.push_back("witness chain: " +
                            std::string(rr.refuted ? "refuted" : "gave up") +
                            " after " + num(rr.trace.size()) + " steps");
      if (!rr.trace.empty() && rr.trace.back().cause)
        rep.details.push_back("final violation: " +
                              render(*rr.trace.back().cause));
      rep.details.push_back(
          "complete search on the " + num(core.size()) + "-formula core: " +
          (sr.verdict == Verdict::Unsat ? "unsatisfiable" : "NOT refuted") +
          " (" + num(sr.nodes) + " nodes)");
      break;
    }
    case 3: {
      rep.title = "variant intersections fall back into the family";
      const FormulaSet g = gamma(n, z, lang);
      rep.verdict = true;
      std::size_t pairs = 0;
      for (Bound t = 1; t + 2 <= n; ++t) {
        const FormulaSet gt = gamma_t(n, t, z, lang);
        for (Bound u = t + 1; u + 2 <= n; ++u) {
          const FormulaSet gu = gamma_t(n, u, z, lang);
          FormulaSet both;
          std::set_intersection(gt.begin(), gt.end(), gu.begin(), gu.end(),
                                std::inserter(both, both.end()));
          ++pairs;
          if (!std::includes(g.begin(), g.end(), both.begin(), both.end())) {
            rep.verdict = false;
            rep.details.push_back("t=" + num(t) + ", t'=" + num(u) +
                                  ": intersection escapes the family");
          }
        }
      }
      rep.details.push_back(num(pairs) + " variant pairs checked");
      break;
    }
    case 4: {
      rep.title = "every variant has an explicit model";
      const auto atoms = family_atom_set(n);
      rep.verdict = true;
      for (Bound t = 1; t + 2 <= n; ++t) {
        const FormulaSet gt = gamma_t(n, t, z, lang);
        const Structure b = witness_model(n, t, z);
        const auto mc = models_set(b, gt);
        const bool same = theory_of(b, atoms, LanguageId{lang, z}) == gt;
        if (!mc.holds) {
          rep.verdict = false;
          rep.details.push_back("t=" + num(t) +
                                ": fails " + render(*mc.failing));
          continue;
        }
        if (!same) {
          rep.verdict = false;
          rep.details.push_back("t=" + num(t) +
                                ": satisfied, but the theory differs");
          continue;
        }
        rep.details.push_back("t=" + num(t) + ": " + num(b.domain().size()) +
                              " elements satisfy all " + num(gt.size()) +
                              " formulas; theory matches exactly");
      }
      break;
    }
  }

  rep.seconds = timer.elapsed();
  return rep;
}

UnsoundRuleError::UnsoundRuleError(const std::string& rule_name,
                                   Structure countermodel)
    : InputError("rule '" + rule_name + "' is unsound"),
      rule_name_(rule_name),
      countermodel_(std::move(countermodel)) {}

ClaimReport incompleteness_experiment(const RuleSet& x, Bound z, Family lang,
                                      const SolverConfig& config) {
  require_z(z);
  require_family(lang);

  for (const Rule& r : x.rules) {
    const auto rs = check_rule_sound(r, z, config);
    if (!rs.sound) throw UnsoundRuleError(r.name, *rs.countermodel);
  }

  Timer timer;
  ClaimReport rep;
  rep.id = 0;
  rep.title = "the rule set cannot be complete";

  const Bound width = x.max_width();
  const Bound n = std::max<Bound>(width + 4, 4);
  const FormulaSet g = gamma(n, z, lang);
  const auto atoms = family_atom_set(n);

  rep.details.push_back(num(x.rules.size()) + " sound rules, widest uses " +
                        num(width) + " antecedents; family built at n=" +
                        num(n) + " over " + num(atoms.size()) + " atoms");

  const auto rr = refute_witness_chain(g);
  rep.details.push_back(std::string("the family is ") +
                        (rr.refuted ? "unsatisfiable" : "NOT shown unsatisfiable") +
                        ", so deriving an absurdity from it would be sound");

  const auto cr = is_complete_set(g, atoms, LanguageId{lang, z});
  rep.details.push_back(std::string(cr.complete && cr.exactly_one
                                        ? "the family is complete"
                                        : "the family is NOT complete") +
                        ", so reductio derives nothing direct rules cannot");

  const FormulaSet closure = direct_closure(g, x, atoms);
  const bool stable =
      std::includes(g.begin(), g.end(), closure.begin(), closure.end());
  rep.details.push_back("closure under the rules has " + num(closure.size()) +
                        " formulas; " +
                        (stable ? "nothing new is derivable"
                                : "new formulas appeared"));

  const bool clean = !has_absurdity(closure);
  rep.verdict = rr.refuted && cr.complete && cr.exactly_one && stable && clean;
  rep.details.push_back(
      rep.verdict ? "no absurdity is derivable from an unsatisfiable set: "
                    "the rules are incomplete"
                  : "experiment inconclusive");

  rep.seconds = timer.elapsed();
  return rep;
}

}  // namespace nsyl::nogo
