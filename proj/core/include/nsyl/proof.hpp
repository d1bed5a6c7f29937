#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nsyl/semantics.hpp"
#include "nsyl/solver.hpp"
#include "nsyl/syntax.hpp"

namespace nsyl {

/// A syllogistic rule: finitely many antecedents (possibly none) and one
/// consequent. Atoms are schematic and range over all atoms under
/// substitution.
struct Rule {
  std::string name;
  FormulaSet antecedents;
  Formula consequent;

  std::size_t width() const { return antecedents.size(); }
  std::set<Atom> atoms() const;
};

/// Total map from a rule's atoms; need not be injective.
using Substitution = std::map<Atom, Atom>;

/// Applies a substitution atom-wise, re-canonicalizing argument pairs.
/// Errors if the substitution misses one of the rule's atoms.
Rule instantiate(const Rule& rule, const Substitution& g);
Formula apply_substitution(const Substitution& g, const Formula& f);

struct RuleSet {
  std::vector<Rule> rules;

  std::size_t max_width() const;
};

class DerivationNode;
using Derivation = std::shared_ptr<const DerivationNode>;

/// One node of a derivation tree.
///   Premise: a leaf; carries a discharge tag when bound by an ancestor Raa.
///   RuleApp: children prove the instantiated antecedents.
///   Raa: concludes the negation of an assumption whose occurrences (tagged
///   premise leaves below, possibly none) the child refutation discharges.
class DerivationNode {
public:
  enum class Kind { Premise, RuleApp, Raa };

  static Derivation premise(Formula f, std::optional<int> discharge = {});
  static Derivation rule_app(const Rule& rule, Substitution g,
                             std::vector<Derivation> children);
  static Derivation raa(Formula conclusion, int tag, Derivation refutation);

  Kind kind() const noexcept { return kind_; }
  const Formula& conclusion() const noexcept { return conclusion_; }
  // Premise only.
  std::optional<int> discharge() const noexcept { return discharge_; }
  // RuleApp only.
  const Rule& rule() const;
  const Substitution& substitution() const;
  const std::vector<Derivation>& children() const noexcept { return children_; }
  // Raa only: the discharged assumption is negate(conclusion()).
  int tag() const;
  Formula assumption() const;

private:
  DerivationNode(Kind kind, Formula conclusion);

  Kind kind_;
  Formula conclusion_;
  std::optional<int> discharge_;
  std::shared_ptr<const Rule> rule_;
  Substitution subst_;
  std::vector<Derivation> children_;
  int tag_ = 0;
};

/// Counts every node of the tree.
std::size_t derivation_size(const Derivation& d);

/// Indented text rendering; discharged assumptions appear as [φ]^k and the
/// binding step as (raa)^k.
std::string render_derivation(const Derivation& d);

/// Rewrites every atom through the map (total on the derivation's atoms),
/// preserving tree shape and tags.
Derivation rename_atoms(const Derivation& d, const std::map<Atom, Atom>& map);

/// Least superset of Θ closed under instances of the rules whose formulas
/// lie in the language over P'. Membership decides direct derivability for
/// goals over P'.
FormulaSet direct_closure(const FormulaSet& theta, const RuleSet& x,
                          const std::set<Atom>& atoms);

/// Returns a derivation of the goal from Θ by rule instances alone, if one
/// exists over atoms(Θ ∪ {goal}).
std::optional<Derivation> derive_direct(const FormulaSet& theta,
                                        const RuleSet& x, const Formula& goal);

struct DeriveLimits {
  std::uint64_t max_contexts = 1'000'000;
};

/// Decides derivability with reductio ad absurdum over atoms(Θ ∪ {goal}):
/// assumptions may be added and discharged when they lead to an absurdity.
/// Returns a derivation on success, nullopt when underivable; throws
/// ResourceLimitError when the context budget is exhausted.
std::optional<Derivation> derive_indirect(const FormulaSet& theta,
                                          const RuleSet& x, const Formula& goal,
                                          const DeriveLimits& limits = {});

struct VerificationResult {
  bool ok = true;
  std::string diagnostic;
};

/// Re-checks a derivation tree against premises Θ and rule set X: legal rule
/// instances, undischarged premises within Θ, absurdity conclusions under
/// every Raa, and well-scoped discharge tags.
VerificationResult verify_derivation(const Derivation& d,
                                     const FormulaSet& theta, const RuleSet& x);

struct RuleSoundness {
  bool sound = false;
  std::optional<Structure> countermodel;  // present when unsound
};

/// A rule is sound iff its antecedents entail its consequent; decided with
/// the complete solver at bound cap z.
RuleSoundness check_rule_sound(const Rule& rule, Bound z,
                               const SolverConfig& config = {});

/// The stock rule sets: "darii_ferio" and "transfer_z" (the two transfer
/// schemata instantiated for all 0 <= i <= j <= z).
std::map<std::string, RuleSet> builtin_rulesets(Bound z);

}  // namespace nsyl
