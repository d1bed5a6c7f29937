#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <vector>

#include "nsyl/solver.hpp"

namespace nsyl {

namespace {

// Union-find over witness indices; classes carry the union of the atoms
// their witnesses provably satisfy.
struct Chains {
  std::vector<std::size_t> parent;
  std::vector<std::string> name;        // per witness
  std::vector<std::set<Atom>> atoms;    // per root

  std::size_t find(std::size_t w) {
    while (parent[w] != w) w = parent[w] = parent[parent[w]];
    return w;
  }

  // Keeps the smaller index as representative.
  std::size_t merge(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    atoms[a].insert(atoms[b].begin(), atoms[b].end());
    atoms[b].clear();
    return a;
  }
};

std::string atom_list(const std::set<Atom>& atoms) {
  std::string out;
  for (const Atom& a : atoms) {
    if (!out.empty()) out += ' ';
    out += a.name();
  }
  return out;
}

}  // namespace

RefutationResult refute_witness_chain(const FormulaSet& phi) {
  RefutationResult result;
  Chains chains;

  // Positive-pair facts drive everything; the rest of the set is ignored,
  // which is sound when the goal is refutation.
  std::vector<std::pair<Atom, Atom>> subset_facts;  // <=0(p,~q): p subset q
  for (const Formula& f : phi) {
    const Literal& a = f.first();
    const Literal& b = f.second();
    if (f.quant() == Quant::MoreThan && f.bound() == 0 && a.positive &&
        b.positive) {
      std::size_t w = chains.parent.size();
      chains.parent.push_back(w);
      chains.name.push_back("a_" + std::to_string(w));
      chains.atoms.push_back({a.atom, b.atom});
      result.trace.push_back({TraceStep::Kind::Witness, f,
                              chains.name[w] + " satisfies " +
                                  atom_list(chains.atoms[w])});
    } else if (f.quant() == Quant::AtMost && f.bound() == 0 &&
               a.positive != b.positive) {
      const Literal& sub = a.positive ? a : b;
      const Literal& sup = a.positive ? b : a;
      subset_facts.emplace_back(sub.atom, sup.atom);
    }
  }
  std::sort(subset_facts.begin(), subset_facts.end());
  subset_facts.erase(std::unique(subset_facts.begin(), subset_facts.end()),
                     subset_facts.end());

  auto saturate = [&]() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t w = 0; w < chains.parent.size(); ++w) {
        if (chains.find(w) != w) continue;
        for (const auto& [sub, sup] : subset_facts) {
          if (chains.atoms[w].contains(sub) &&
              chains.atoms[w].insert(sup).second) {
            changed = true;
            result.trace.push_back(
                {TraceStep::Kind::Subset,
                 Formula::at_most(0, pos(sub), neg(sup)),
                 chains.name[w] + " gains " + sup.name() + " (" +
                     sub.name() + " is contained in " + sup.name() + ")"});
          }
        }
      }
    }
  };

  auto region_roots = [&](const Atom& p, const Atom& q) {
    std::vector<std::size_t> roots;
    for (std::size_t w = 0; w < chains.parent.size(); ++w)
      if (chains.find(w) == w && chains.atoms[w].contains(p) &&
          chains.atoms[w].contains(q))
        roots.push_back(w);
    return roots;
  };

  saturate();
  for (;;) {
    // A class inside an AtMost-0 region is a contradiction.
    for (const Formula& f : phi) {
      if (f.quant() != Quant::AtMost || f.bound() != 0 ||
          !f.first().positive || !f.second().positive)
        continue;
      auto roots = region_roots(f.first().atom, f.second().atom);
      if (!roots.empty()) {
        result.trace.push_back(
            {TraceStep::Kind::Violation, f,
             chains.name[roots.front()] + " satisfies both " +
                 f.first().atom.name() + " and " + f.second().atom.name()});
        result.refuted = true;
        return result;
      }
    }
    // Two classes inside an AtMost-1 region denote the same element.
    bool merged = false;
    for (const Formula& f : phi) {
      if (f.quant() != Quant::AtMost || f.bound() != 1 ||
          !f.first().positive || !f.second().positive)
        continue;
      auto roots = region_roots(f.first().atom, f.second().atom);
      if (roots.size() < 2) continue;
      std::size_t kept = chains.merge(roots[0], roots[1]);
      std::size_t gone = kept == roots[0] ? roots[1] : roots[0];
      result.trace.push_back({TraceStep::Kind::Merge, f,
                              chains.name[gone] + " coincides with " +
                                  chains.name[kept]});
      merged = true;
      break;
    }
    if (!merged) return result;
    saturate();
  }
}

}  // namespace nsyl
