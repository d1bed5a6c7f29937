#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "detail/bits.hpp"
#include "detail/engines.hpp"

namespace nsyl::detail {

namespace {

// Branch-and-propagate over partial elements. Each element carries two bit
// sets over the relevant atoms: `in` (provably satisfied) and `forbidden`
// (provably falsified). The search maintains the invariant that the current
// element list embeds injectively into every model it still tracks, so
// exhausting all branches is a proof of unsatisfiability, and a state where
// reading each element as exactly its `in` set satisfies every formula is a
// model.
class WitnessSearch {
public:
  WitnessSearch(const FormulaSet& phi, Bound z, const SolverConfig& config)
      : config_(config) {
    std::set<Atom> atom_set = atoms_of(phi);
    atoms_.assign(atom_set.begin(), atom_set.end());
    element_cap_ = small_model_bound(phi, z);

    auto index_of = [&](const Atom& a) {
      return static_cast<std::size_t>(
          std::lower_bound(atoms_.begin(), atoms_.end(), a) - atoms_.begin());
    };
    for (const Formula& f : phi) {
      WFormula wf;
      wf.quant = f.quant();
      wf.bound = f.bound();
      wf.args = {f.first(), f.second()};
      wf.pos = Bits(atoms_.size());
      wf.neg = Bits(atoms_.size());
      for (const Literal& l : wf.args)
        (l.positive ? wf.pos : wf.neg).set(index_of(l.atom));
      formulas_.push_back(std::move(wf));
    }
    for (std::size_t i = 0; i < formulas_.size(); ++i) {
      if (formulas_[i].quant == Quant::AtMost)
        atmost_order_.push_back(i);
      else
        more_order_.push_back(i);
    }
    // Cheapest obligations first; ties in formula-set order.
    std::stable_sort(more_order_.begin(), more_order_.end(),
                     [&](std::size_t a, std::size_t b) {
                       return formulas_[a].bound < formulas_[b].bound;
                     });
  }

  SatResult run() {
    push_element();
    SatResult result;
    result.engine = Engine::Witness;
    result.verdict = dfs() ? Verdict::Sat : Verdict::Unsat;
    result.nodes = nodes_;
    if (result.verdict == Verdict::Sat) result.model = std::move(model_);
    return result;
  }

private:
  struct WFormula {
    Quant quant;
    Bound bound;
    std::vector<Literal> args;
    Bits pos, neg;  // region: atoms required in / required out
  };

  struct Element {
    Bits in, forbidden;
  };

  struct TrailOp {
    enum Kind { InBit, ForbidBit, NewElem } kind;
    std::size_t elem = 0, bit = 0;
  };

  void push_element() {
    elements_.push_back({Bits(atoms_.size()), Bits(atoms_.size())});
    trail_.push_back({TrailOp::NewElem});
  }

  bool set_in(std::size_t e, std::size_t bit) {
    if (elements_[e].in.test(bit)) return false;
    elements_[e].in.set(bit);
    trail_.push_back({TrailOp::InBit, e, bit});
    return true;
  }

  bool set_forbidden(std::size_t e, std::size_t bit) {
    if (elements_[e].forbidden.test(bit)) return false;
    elements_[e].forbidden.set(bit);
    trail_.push_back({TrailOp::ForbidBit, e, bit});
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      const TrailOp& op = trail_.back();
      switch (op.kind) {
        case TrailOp::InBit:
          elements_[op.elem].in.reset(op.bit);
          break;
        case TrailOp::ForbidBit:
          elements_[op.elem].forbidden.reset(op.bit);
          break;
        case TrailOp::NewElem:
          elements_.pop_back();
          break;
      }
      trail_.pop_back();
    }
  }

  bool provable(std::size_t e, const Literal& l) const {
    std::size_t bit = atom_index(l.atom);
    return l.positive ? elements_[e].in.test(bit)
                      : elements_[e].forbidden.test(bit);
  }

  // Forces l to fail on e; returns whether the state changed.
  bool enforce_false(std::size_t e, const Literal& l) {
    std::size_t bit = atom_index(l.atom);
    return l.positive ? set_forbidden(e, bit) : set_in(e, bit);
  }

  std::size_t atom_index(const Atom& a) const {
    return static_cast<std::size_t>(
        std::lower_bound(atoms_.begin(), atoms_.end(), a) - atoms_.begin());
  }

  // AtMost-0 facts propagate deterministically: an element provably
  // satisfying one argument must falsify the other.
  void closure() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const WFormula& f : formulas_) {
        if (f.quant != Quant::AtMost || f.bound != 0) continue;
        for (std::size_t e = 0; e < elements_.size(); ++e) {
          if (provable(e, f.args[0])) changed |= enforce_false(e, f.args[1]);
          if (provable(e, f.args[1])) changed |= enforce_false(e, f.args[0]);
        }
      }
    }
  }

  // Reading the element as exactly its `in` set, is it inside the region?
  bool member(std::size_t e, const WFormula& f) const {
    return is_subset(f.pos, elements_[e].in) &&
           !intersects(f.neg, elements_[e].in);
  }

  Bound member_count(const WFormula& f) const {
    Bound n = 0;
    for (std::size_t e = 0; e < elements_.size(); ++e)
      if (member(e, f)) ++n;
    return n;
  }

  using StateKey = std::vector<std::pair<Bits, Bits>>;

  StateKey canonical() const {
    StateKey key;
    key.reserve(elements_.size());
    for (const Element& e : elements_) key.emplace_back(e.in, e.forbidden);
    std::sort(key.begin(), key.end());
    return key;
  }

  bool dfs() {
    if (++nodes_ > config_.node_budget)
      throw ResourceLimitError("witness engine exceeded its node budget");
    std::size_t mark = trail_.size();
    closure();
    for (const Element& e : elements_) {
      if (intersects(e.in, e.forbidden)) {
        undo_to(mark);
        return false;
      }
    }
    if (!visited_.insert(canonical()).second) {
      undo_to(mark);
      return false;
    }

    // Overflowed budget: some member must escape through a negated argument.
    for (std::size_t fi : atmost_order_) {
      const WFormula& f = formulas_[fi];
      if (member_count(f) <= f.bound) continue;
      for (std::size_t e = 0; e < elements_.size(); ++e) {
        if (!member(e, f)) continue;
        for (const Literal& l : f.args) {
          if (l.positive) continue;
          std::size_t bit = atom_index(l.atom);
          if (elements_[e].forbidden.test(bit)) continue;
          std::size_t branch_mark = trail_.size();
          set_in(e, bit);
          if (dfs()) return true;
          undo_to(branch_mark);
        }
      }
      undo_to(mark);
      return false;
    }

    // Unmet witness obligation: add a fresh minimal element, or pull an
    // existing one into the region.
    for (std::size_t fi : more_order_) {
      const WFormula& f = formulas_[fi];
      if (member_count(f) > f.bound) continue;
      // A fresh element is redundant only when a still-blank element could
      // be pulled into the region instead. A blank sits inside every region
      // without positive arguments already, so there the pull loop skips it
      // and freshness is the only way to raise the count.
      bool pullable_blank = false;
      if (f.pos.any())
        for (const Element& e : elements_)
          if (!e.in.any() && !e.forbidden.any()) pullable_blank = true;
      if (!pullable_blank && elements_.size() < element_cap_) {
        std::size_t branch_mark = trail_.size();
        push_element();
        std::size_t fresh = elements_.size() - 1;
        for (const Literal& l : f.args) {
          std::size_t bit = atom_index(l.atom);
          if (l.positive)
            set_in(fresh, bit);
          else
            set_forbidden(fresh, bit);
        }
        if (dfs()) return true;
        undo_to(branch_mark);
      }
      for (std::size_t e = 0; e < elements_.size(); ++e) {
        if (member(e, f)) continue;
        if (intersects(f.pos, elements_[e].forbidden) ||
            intersects(f.neg, elements_[e].in))
          continue;
        std::size_t branch_mark = trail_.size();
        for (const Literal& l : f.args) {
          std::size_t bit = atom_index(l.atom);
          if (l.positive)
            set_in(e, bit);
          else
            set_forbidden(e, bit);
        }
        if (dfs()) return true;
        undo_to(branch_mark);
      }
      undo_to(mark);
      return false;
    }

    extract_model();
    undo_to(mark);
    return true;
  }

  void extract_model() {
    CellVector cv;
    cv.atoms.insert(atoms_.begin(), atoms_.end());
    for (const Element& e : elements_) {
      Cell cell;
      for (std::size_t i = 0; i < atoms_.size(); ++i)
        if (e.in.test(i)) cell.insert(atoms_[i]);
      ++cv.counts[cell];
    }
    model_ = std::move(cv);
  }

  const SolverConfig& config_;
  std::vector<Atom> atoms_;
  std::vector<WFormula> formulas_;
  std::vector<std::size_t> atmost_order_, more_order_;
  std::vector<Element> elements_;
  std::vector<TrailOp> trail_;
  std::set<StateKey> visited_;
  std::optional<CellVector> model_;
  Bound element_cap_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SatResult witness_search(const FormulaSet& phi, Bound z,
                         const SolverConfig& config) {
  return WitnessSearch(phi, z, config).run();
}

}  // namespace nsyl::detail
