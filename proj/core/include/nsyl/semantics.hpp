#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nsyl/syntax.hpp"

namespace nsyl {

/// A finite structure: a nonempty domain of named elements plus an
/// interpretation of atoms as subsets of it. Atoms absent from the
/// interpretation denote the empty set.
class Structure {
public:
  /// domain: distinct element ids, nonempty. interp: atom -> subset of domain.
  Structure(std::vector<std::string> domain,
            std::map<Atom, std::set<std::string>> interp);

  const std::vector<std::string>& domain() const noexcept { return domain_; }
  const std::map<Atom, std::set<std::string>>& interp() const noexcept {
    return interp_;
  }

  bool holds(const Atom& a, const std::string& element) const;

private:
  std::vector<std::string> domain_;
  std::map<Atom, std::set<std::string>> interp_;
};

/// The set of elements satisfying a literal; negative literals denote the
/// complement relative to the domain.
std::set<std::string> extension(const Structure& s, const Literal& l);

/// |ext(first) ∩ ext(second)| compared against the bound.
bool evaluate(const Structure& s, const Formula& f);

/// True iff every member holds; otherwise carries the first failing formula
/// in canonical order.
struct ModelCheck {
  bool holds = true;
  std::optional<Formula> failing;
};

ModelCheck models_set(const Structure& s, const FormulaSet& phi);

/// The set of all formulas of the language over the given atoms that the
/// structure satisfies. Always complete and exactly-one.
FormulaSet theory_of(const Structure& s, const std::set<Atom>& atoms,
                     LanguageId lang);

}  // namespace nsyl
