#include "nsyl/semantics.hpp"

#include <algorithm>

namespace nsyl {

Structure::Structure(std::vector<std::string> domain,
                     std::map<Atom, std::set<std::string>> interp)
    : domain_(std::move(domain)), interp_(std::move(interp)) {
  if (domain_.empty()) throw InputError("structure domain must be nonempty");
  std::set<std::string> seen(domain_.begin(), domain_.end());
  if (seen.size() != domain_.size())
    throw InputError("structure domain has duplicate element ids");
  for (const auto& [atom, elems] : interp_)
    for (const std::string& e : elems)
      if (!seen.contains(e))
        throw InputError("interpretation of '" + atom.name() +
                         "' mentions unknown element '" + e + "'");
}

bool Structure::holds(const Atom& a, const std::string& element) const {
  auto it = interp_.find(a);
  return it != interp_.end() && it->second.contains(element);
}

std::set<std::string> extension(const Structure& s, const Literal& l) {
  std::set<std::string> out;
  for (const std::string& e : s.domain())
    if (s.holds(l.atom, e) == l.positive) out.insert(e);
  return out;
}

bool evaluate(const Structure& s, const Formula& f) {
  Bound count = 0;
  for (const std::string& e : s.domain()) {
    if (s.holds(f.first().atom, e) == f.first().positive &&
        s.holds(f.second().atom, e) == f.second().positive)
      ++count;
  }
  return f.quant() == Quant::AtMost ? count <= f.bound() : count > f.bound();
}

ModelCheck models_set(const Structure& s, const FormulaSet& phi) {
  for (const Formula& f : phi)
    if (!evaluate(s, f)) return {false, f};
  return {};
}

FormulaSet theory_of(const Structure& s, const std::set<Atom>& atoms,
                     LanguageId lang) {
  if (atoms.empty()) throw InputError("theory_of needs a nonempty atom set");
  if (!lang.bounded())
    throw InputError("theory_of needs a bounded language");
  FormulaSet out;
  for (const auto& [a, b] : literal_pairs(atoms, lang)) {
    Bound count = 0;
    for (const std::string& e : s.domain())
      if (s.holds(a.atom, e) == a.positive && s.holds(b.atom, e) == b.positive)
        ++count;
    // Exactly one of <=i / >i holds at each bound; the switchover is at count.
    for (Bound i = 0; i <= lang.z; ++i)
      out.insert(count <= i ? Formula::at_most(i, a, b)
                            : Formula::more_than(i, a, b));
  }
  return out;
}

}  // namespace nsyl
