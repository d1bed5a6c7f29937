#include "nsyl/solver.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "detail/engines.hpp"

namespace nsyl {

Bound CellVector::total() const {
  Bound n = 0;
  for (const auto& [cell, count] : counts) n += count;
  return n;
}

Structure CellVector::expand() const {
  std::vector<std::string> domain;
  std::map<Atom, std::set<std::string>> interp;
  std::size_t next = 0;
  for (const auto& [cell, count] : counts) {
    for (Bound i = 0; i < count; ++i) {
      std::string id = "x" + std::to_string(next++);
      for (const Atom& a : cell) interp[a].insert(id);
      domain.push_back(std::move(id));
    }
  }
  return Structure(std::move(domain), std::move(interp));
}

Bound small_model_bound(const FormulaSet& phi, Bound z) {
  for (const Formula& f : phi)
    if (f.bound() > z)
      throw InputError("formula bound " + std::to_string(f.bound()) +
                       " exceeds the language cap " + std::to_string(z));
  Bound n = (z + 1) * static_cast<Bound>(phi.size());
  return n == 0 ? 1 : n;
}

namespace {

// ---- brute engine: exhaustive search over cell vectors ----

struct BruteFormula {
  std::uint32_t pos_mask = 0;  // atoms the region requires in
  std::uint32_t neg_mask = 0;  // atoms the region requires out
  Quant quant;
  Bound bound;
};

class BruteSearch {
public:
  BruteSearch(const FormulaSet& phi, Bound z, const SolverConfig& config)
      : config_(config) {
    std::set<Atom> atom_set = atoms_of(phi);
    atoms_.assign(atom_set.begin(), atom_set.end());
    if (atoms_.size() > config.brute_atom_cap)
      throw InputError("brute engine atom cap (" +
                       std::to_string(config.brute_atom_cap) + ") exceeded: " +
                       std::to_string(atoms_.size()) + " atoms");
    if (atoms_.size() > 20)
      throw InputError("brute engine supports at most 20 atoms");
    cell_cap_ = config.brute_cell_cap.value_or(z + 1);
    max_total_ = small_model_bound(phi, z);
    ncells_ = std::size_t{1} << atoms_.size();

    auto index_of = [&](const Atom& a) {
      return static_cast<std::uint32_t>(
          std::lower_bound(atoms_.begin(), atoms_.end(), a) - atoms_.begin());
    };
    for (const Formula& f : phi) {
      BruteFormula bf;
      bf.quant = f.quant();
      bf.bound = f.bound();
      for (const Literal* l : {&f.first(), &f.second()}) {
        std::uint32_t bit = std::uint32_t{1} << index_of(l->atom);
        (l->positive ? bf.pos_mask : bf.neg_mask) |= bit;
      }
      formulas_.push_back(bf);
    }
    // Number of region cells with index >= c, for unreachability pruning.
    region_suffix_.assign(formulas_.size(),
                          std::vector<Bound>(ncells_ + 1, 0));
    for (std::size_t fi = 0; fi < formulas_.size(); ++fi)
      for (std::size_t c = ncells_; c-- > 0;)
        region_suffix_[fi][c] =
            region_suffix_[fi][c + 1] + (in_region(fi, c) ? 1 : 0);
  }

  SatResult run() {
    counts_.assign(ncells_, 0);
    region_counts_.assign(formulas_.size(), 0);
    SatResult result;
    result.engine = Engine::Brute;
    result.verdict = dfs(0, 0) ? Verdict::Sat : Verdict::Unsat;
    result.nodes = nodes_;
    if (result.verdict == Verdict::Sat) {
      CellVector cv;
      cv.atoms.insert(atoms_.begin(), atoms_.end());
      for (std::size_t c = 0; c < ncells_; ++c) {
        if (counts_[c] == 0) continue;
        Cell cell;
        for (std::size_t i = 0; i < atoms_.size(); ++i)
          if ((c >> i) & 1) cell.insert(atoms_[i]);
        cv.counts[cell] = counts_[c];
      }
      result.model = std::move(cv);
    }
    return result;
  }

private:
  bool in_region(std::size_t fi, std::size_t cell) const {
    const BruteFormula& f = formulas_[fi];
    return (cell & f.pos_mask) == f.pos_mask && (cell & f.neg_mask) == 0;
  }

  bool dfs(std::size_t cell, Bound total) {
    if (++nodes_ > config_.node_budget)
      throw ResourceLimitError("brute engine exceeded its node budget");
    for (std::size_t fi = 0; fi < formulas_.size(); ++fi) {
      const BruteFormula& f = formulas_[fi];
      if (f.quant == Quant::AtMost) {
        if (region_counts_[fi] > f.bound) return false;
      } else {
        Bound room = region_suffix_[fi][cell] * cell_cap_;
        if (region_counts_[fi] + room <= f.bound) return false;
      }
    }
    if (cell == ncells_) {
      if (total == 0) return false;
      for (std::size_t fi = 0; fi < formulas_.size(); ++fi)
        if (formulas_[fi].quant == Quant::MoreThan &&
            region_counts_[fi] <= formulas_[fi].bound)
          return false;
      return true;
    }
    for (Bound n = 0; n <= cell_cap_ && total + n <= max_total_; ++n) {
      counts_[cell] = n;
      for (std::size_t fi = 0; fi < formulas_.size(); ++fi)
        if (in_region(fi, cell)) region_counts_[fi] += n;
      bool found = dfs(cell + 1, total + n);
      for (std::size_t fi = 0; fi < formulas_.size(); ++fi)
        if (in_region(fi, cell)) region_counts_[fi] -= n;
      if (found) return true;
      counts_[cell] = 0;
    }
    return false;
  }

  const SolverConfig& config_;
  std::vector<Atom> atoms_;
  std::vector<BruteFormula> formulas_;
  std::vector<std::vector<Bound>> region_suffix_;
  std::vector<Bound> counts_;
  std::vector<Bound> region_counts_;
  Bound cell_cap_ = 0;
  Bound max_total_ = 0;
  std::size_t ncells_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

namespace detail {

SatResult brute_search(const FormulaSet& phi, Bound z,
                       const SolverConfig& config) {
  return BruteSearch(phi, z, config).run();
}

}  // namespace detail

SatResult satisfiable(const FormulaSet& phi, Bound z, Engine engine,
                      const SolverConfig& config) {
  for (const Formula& f : phi)
    if (f.bound() > z)
      throw InputError("formula bound " + std::to_string(f.bound()) +
                       " exceeds the language cap " + std::to_string(z));
  SatResult result;
  switch (engine) {
    case Engine::Brute:
      result = detail::brute_search(phi, z, config);
      break;
    case Engine::Witness:
      result = detail::witness_search(phi, z, config);
      break;
    case Engine::Refute: {
      RefutationResult r = refute_witness_chain(phi);
      result.engine = Engine::Refute;
      result.verdict = r.refuted ? Verdict::Unsat : Verdict::Unknown;
      result.nodes = r.trace.size();
      break;
    }
  }
  if (result.verdict == Verdict::Sat) {
    if (!result.model)
      throw std::logic_error("engine reported Sat without a model");
    ModelCheck check = models_set(result.model->expand(), phi);
    if (!check.holds)
      throw std::logic_error("engine returned a non-model");
  }
  return result;
}

bool entails(const FormulaSet& theta, const Formula& psi, Bound z,
             Engine engine, const SolverConfig& config) {
  FormulaSet question = theta;
  question.insert(negate(psi));
  return satisfiable(question, z, engine, config).verdict == Verdict::Unsat;
}

}  // namespace nsyl
