#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsyl {

/// Thrown when an argument violates a documented precondition.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a search exceeds its configured node or size budget.
class ResourceLimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using Bound = std::uint64_t;

/// Unary predicate symbol. Names match [a-z][a-z0-9_]*.
class Atom {
public:
  explicit Atom(std::string name);
  const std::string& name() const noexcept { return name_; }
  auto operator<=>(const Atom&) const = default;
  bool operator==(const Atom&) const = default;

private:
  std::string name_;
};

bool valid_atom_name(const std::string& name);

/// An atom or its complement.
struct Literal {
  explicit Literal(Atom a, bool positive = true)
      : atom(std::move(a)), positive(positive) {}

  Atom atom;
  bool positive;

  Literal complement() const { return Literal(atom, !positive); }

  // Canonical order: by atom name, positive before negative.
  std::strong_ordering operator<=>(const Literal& o) const {
    if (auto c = atom <=> o.atom; c != 0) return c;
    return (positive ? 0 : 1) <=> (o.positive ? 0 : 1);
  }
  bool operator==(const Literal&) const = default;
};

inline Literal pos(Atom a) { return Literal(std::move(a), true); }
inline Literal neg(Atom a) { return Literal(std::move(a), false); }

enum class Quant { AtMost, MoreThan };

/// A counting assertion over an unordered pair of literals: the number of
/// elements satisfying both arguments is at most / more than the bound.
/// Arguments are stored in canonical order, so formulas that differ only in
/// argument order compare equal.
class Formula {
public:
  Formula(Quant quant, Bound bound, Literal a, Literal b);

  static Formula at_most(Bound bound, Literal a, Literal b) {
    return Formula(Quant::AtMost, bound, std::move(a), std::move(b));
  }
  static Formula more_than(Bound bound, Literal a, Literal b) {
    return Formula(Quant::MoreThan, bound, std::move(a), std::move(b));
  }

  Quant quant() const noexcept { return quant_; }
  Bound bound() const noexcept { return bound_; }
  const Literal& first() const noexcept { return first_; }
  const Literal& second() const noexcept { return second_; }

  std::strong_ordering operator<=>(const Formula& o) const {
    if (auto c = first_ <=> o.first_; c != 0) return c;
    if (auto c = second_ <=> o.second_; c != 0) return c;
    if (auto c = bound_ <=> o.bound_; c != 0) return c;
    return static_cast<int>(quant_) <=> static_cast<int>(o.quant_);
  }
  bool operator==(const Formula&) const = default;

private:
  Quant quant_;
  Bound bound_;
  Literal first_, second_;
};

using FormulaSet = std::set<Formula>;

/// Flips the quantifier, keeping bound and arguments: the result holds in
/// exactly the structures where the input fails.
Formula negate(const Formula& f);

/// True for any formula asserting more than i things satisfy both an atom
/// and its complement; such a formula has no models.
bool is_absurdity(const Formula& f);

enum class Family { S, SDagger, N, NDagger };

/// Identifies one of the fragments: S/SDagger carry a bound cap z, the
/// N families admit every bound. S and N require at least one positive
/// argument; the dagger variants allow both arguments negative.
struct LanguageId {
  Family family;
  Bound z;

  static LanguageId s(Bound z) { return {Family::S, z}; }
  static LanguageId sdagger(Bound z) { return {Family::SDagger, z}; }
  static LanguageId n() { return {Family::N, 0}; }
  static LanguageId ndagger() { return {Family::NDagger, 0}; }

  bool bounded() const noexcept {
    return family == Family::S || family == Family::SDagger;
  }
  bool dagger() const noexcept {
    return family == Family::SDagger || family == Family::NDagger;
  }
  bool operator==(const LanguageId&) const = default;
};

bool in_language(const Formula& f, LanguageId lang);

/// Kinds of bound-family abbreviations. Each expands to the set of plain
/// formulas over one argument pair that pins the count at most / more than /
/// exactly at i, relative to bound cap z:
///   AtMost   -> { <=i .. <=z }
///   MoreThan -> { >0 .. >i }
///   Exactly  -> { >0 .. >i-1 } + { <=i .. <=z }
enum class StarKind { AtMost, MoreThan, Exactly };

FormulaSet expand_star(StarKind kind, Bound i, Bound z, const Literal& a,
                       const Literal& b);

/// All formulas of the language over the given atoms. Errors on the
/// unbounded families.
FormulaSet enumerate_language(const std::set<Atom>& atoms, LanguageId lang);

/// All canonical unordered literal pairs over the given atoms, restricted to
/// the language family (S/N families exclude both-negative pairs).
std::vector<std::pair<Literal, Literal>> literal_pairs(
    const std::set<Atom>& atoms, LanguageId lang);

struct CompletenessReport {
  bool complete = false;     // each formula of the language or its negation
  bool exactly_one = false;  // ... and never both
  FormulaSet missing;        // formulas with neither member present
  FormulaSet doubled;        // formulas present together with their negation
};

/// Checks a set against the language over the given atoms. Every formula of
/// the set must itself lie in that language.
CompletenessReport is_complete_set(const FormulaSet& phi,
                                   const std::set<Atom>& atoms,
                                   LanguageId lang);

std::set<Atom> atoms_of(const Formula& f);
std::set<Atom> atoms_of(const FormulaSet& phi);

}  // namespace nsyl
