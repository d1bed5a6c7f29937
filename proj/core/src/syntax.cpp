#include "nsyl/syntax.hpp"

#include <algorithm>
#include <cctype>

namespace nsyl {

bool valid_atom_name(const std::string& name) {
  if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

Atom::Atom(std::string name) : name_(std::move(name)) {
  if (!valid_atom_name(name_))
    throw InputError("invalid atom name: '" + name_ + "'");
}

Formula::Formula(Quant quant, Bound bound, Literal a, Literal b)
    : quant_(quant), bound_(bound), first_(std::move(a)), second_(std::move(b)) {
  if (second_ < first_) std::swap(first_, second_);
}

Formula negate(const Formula& f) {
  return Formula(f.quant() == Quant::AtMost ? Quant::MoreThan : Quant::AtMost,
                 f.bound(), f.first(), f.second());
}

bool is_absurdity(const Formula& f) {
  return f.quant() == Quant::MoreThan && f.first().atom == f.second().atom &&
         f.first().positive != f.second().positive;
}

bool in_language(const Formula& f, LanguageId lang) {
  if (lang.bounded() && f.bound() > lang.z) return false;
  if (!lang.dagger() && !f.first().positive && !f.second().positive)
    return false;
  return true;
}

FormulaSet expand_star(StarKind kind, Bound i, Bound z, const Literal& a,
                       const Literal& b) {
  if (i > z)
    throw InputError("expand_star: level " + std::to_string(i) +
                     " exceeds bound cap " + std::to_string(z));
  FormulaSet out;
  switch (kind) {
    case StarKind::AtMost:
      for (Bound j = i; j <= z; ++j) out.insert(Formula::at_most(j, a, b));
      break;
    case StarKind::MoreThan:
      for (Bound j = 0; j <= i; ++j) out.insert(Formula::more_than(j, a, b));
      break;
    case StarKind::Exactly:
      for (Bound j = 0; j < i; ++j) out.insert(Formula::more_than(j, a, b));
      for (Bound j = i; j <= z; ++j) out.insert(Formula::at_most(j, a, b));
      break;
  }
  return out;
}

std::vector<std::pair<Literal, Literal>> literal_pairs(
    const std::set<Atom>& atoms, LanguageId lang) {
  std::vector<Literal> lits;
  for (const Atom& a : atoms) {
    lits.push_back(pos(a));
    lits.push_back(neg(a));
  }
  std::sort(lits.begin(), lits.end());
  std::vector<std::pair<Literal, Literal>> out;
  for (std::size_t i = 0; i < lits.size(); ++i)
    for (std::size_t j = i; j < lits.size(); ++j) {
      if (!lang.dagger() && !lits[i].positive && !lits[j].positive) continue;
      out.emplace_back(lits[i], lits[j]);
    }
  return out;
}

FormulaSet enumerate_language(const std::set<Atom>& atoms, LanguageId lang) {
  if (!lang.bounded())
    throw InputError("enumerate_language: language has unbounded counts");
  FormulaSet out;
  for (const auto& [a, b] : literal_pairs(atoms, lang))
    for (Bound i = 0; i <= lang.z; ++i) {
      out.insert(Formula::at_most(i, a, b));
      out.insert(Formula::more_than(i, a, b));
    }
  return out;
}

CompletenessReport is_complete_set(const FormulaSet& phi,
                                   const std::set<Atom>& atoms,
                                   LanguageId lang) {
  if (!lang.bounded())
    throw InputError("is_complete_set: language has unbounded counts");
  for (const Formula& f : phi) {
    if (!in_language(f, lang))
      throw InputError("is_complete_set: formula outside the language");
    auto fa = atoms_of(f);
    if (!std::includes(atoms.begin(), atoms.end(), fa.begin(), fa.end()))
      throw InputError("is_complete_set: formula over an unknown atom");
  }
  CompletenessReport rep;
  // One representative per complement pair: the AtMost form.
  for (const auto& [a, b] : literal_pairs(atoms, lang))
    for (Bound i = 0; i <= lang.z; ++i) {
      Formula f = Formula::at_most(i, a, b);
      bool has = phi.contains(f), has_neg = phi.contains(negate(f));
      if (!has && !has_neg) rep.missing.insert(f);
      if (has && has_neg) rep.doubled.insert(f);
    }
  rep.complete = rep.missing.empty();
  rep.exactly_one = rep.complete && rep.doubled.empty();
  return rep;
}

std::set<Atom> atoms_of(const Formula& f) {
  return {f.first().atom, f.second().atom};
}

std::set<Atom> atoms_of(const FormulaSet& phi) {
  std::set<Atom> out;
  for (const Formula& f : phi) {
    out.insert(f.first().atom);
    out.insert(f.second().atom);
  }
  return out;
}

}  // namespace nsyl
