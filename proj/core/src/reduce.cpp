#include <string>

#include "nsyl/solver.hpp"

namespace nsyl {

namespace {

bool is_triple_cap(const Formula& f) {
  return f.quant() == Quant::AtMost && f.bound() == 3 && f.first().positive &&
         f.second().positive && f.first().atom == f.second().atom;
}

}  // namespace

FormulaSet reduce_t_to_s1(const FormulaSet& phi) {
  const LanguageId s1 = LanguageId::s(1);
  for (const Formula& f : phi)
    if (!in_language(f, s1) && !is_triple_cap(f))
      throw InputError("formula outside the reduction's input language: " +
                       std::to_string(f.bound()) + "-bounded form");

  std::set<Atom> used = atoms_of(phi);
  std::size_t counter = 0;
  auto fresh = [&]() {
    for (;;) {
      Atom a("o__g" + std::to_string(counter++));
      if (used.insert(a).second) return a;
    }
  };

  FormulaSet out;
  for (const Formula& f : phi) {
    if (!is_triple_cap(f)) {
      out.insert(f);
      continue;
    }
    // |p| <= 3 becomes: at most one p outside o, and |o| <= 2 via o'.
    Literal p = f.first();
    Atom o = fresh();
    Atom o2 = fresh();
    out.insert(Formula::at_most(1, p, neg(o)));
    out.insert(Formula::at_most(1, pos(o), pos(o2)));
    out.insert(Formula::at_most(1, pos(o), neg(o2)));
  }
  return out;
}

FormulaSet reduce_3col(const Graph& g) {
  if (g.vertex_count < 1) throw InputError("graph must have at least one vertex");
  for (const auto& [u, v] : g.edges) {
    if (u < 1 || v < 1 || u > g.vertex_count || v > g.vertex_count)
      throw InputError("edge endpoint out of range");
    if (u == v) throw InputError("self-loops are not allowed");
  }
  Atom c("c");
  auto vertex_atom = [](std::size_t v) {
    return Atom("v" + std::to_string(v));
  };

  FormulaSet out;
  // The colour atom holds at most three elements; each vertex atom holds
  // exactly one, which must be a colour; adjacent vertices share none.
  out.insert(Formula::at_most(3, pos(c), pos(c)));
  for (std::size_t v = 1; v <= g.vertex_count; ++v) {
    Atom a = vertex_atom(v);
    out.insert(Formula::more_than(0, pos(a), pos(a)));
    out.insert(Formula::at_most(1, pos(a), pos(a)));
    out.insert(Formula::at_most(0, pos(a), neg(c)));
  }
  for (const auto& [u, v] : g.edges)
    out.insert(Formula::at_most(0, pos(vertex_atom(u)), pos(vertex_atom(v))));
  return out;
}

}  // namespace nsyl
