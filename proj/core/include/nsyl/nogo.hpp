#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsyl/proof.hpp"
#include "nsyl/semantics.hpp"
#include "nsyl/solver.hpp"
#include "nsyl/syntax.hpp"

namespace nsyl::nogo {

/// The counterexample family lives over 4n+2 atoms:
/// p_0..p_{2n-1}, q_0..q_{2n+1}. Requires n >= 4.
std::vector<Atom> family_atoms(Bound n);

/// The complete, absurdity-free, unsatisfiable theory over family_atoms(n).
/// lang must be Family::S or Family::SDagger; the S variant keeps exactly
/// the formulas with at least one positive argument. Requires z >= 1.
FormulaSet gamma(Bound n, Bound z, Family lang);

/// The satisfiable variant: swaps three formulas around column t,
/// 1 <= t <= n-2.
FormulaSet gamma_t(Bound n, Bound t, Bound z, Family lang);

/// The subset of gamma doing the refutation work: the chain existentials,
/// the p->q subset constraints, the q-pair budgets, and the terminal
/// (p_0, p_{2n-1}) prohibition. Unsatisfiable on its own.
FormulaSet unsat_core(Bound n, Bound z);

/// The explicit model of gamma_t(n,t,z,·): elements a, a', e, e' plus z+1
/// copies of each b/c/d family element.
Structure witness_model(Bound n, Bound t, Bound z);

struct ClaimReport {
  int id = 0;
  std::string title;
  bool verdict = false;
  std::vector<std::string> details;
  double seconds = 0.0;
};

/// Machine checks of the four concrete claims about the family:
///   1: gamma is complete, exactly-one, and absurdity-free.
///   2: gamma refutes by witness chain; the core subset is UNSAT under the
///      complete witness engine.
///   3: pairwise intersections of the gamma_t variants stay inside gamma.
///   4: every witness_model satisfies its gamma_t; moreover its full theory
///      equals gamma_t exactly.
ClaimReport check_claim(Bound n, Bound z, Family lang, int id,
                        const SolverConfig& config = {});

/// Thrown when the incompleteness experiment is handed an unsound rule.
class UnsoundRuleError : public InputError {
public:
  UnsoundRuleError(const std::string& rule_name, Structure countermodel);
  const std::string& rule_name() const noexcept { return rule_name_; }
  const Structure& countermodel() const noexcept { return countermodel_; }

private:
  std::string rule_name_;
  Structure countermodel_;
};

/// For a rule set X of sound rules: picks n = max(max_width + 4, 4), builds
/// gamma, and verifies closure stability (nothing new derivable), so no
/// absurdity is derivable from a set the solver certifies unsatisfiable.
/// The verdict is true when X is thereby shown incomplete.
ClaimReport incompleteness_experiment(const RuleSet& x, Bound z, Family lang,
                                      const SolverConfig& config = {});

}  // namespace nsyl::nogo
