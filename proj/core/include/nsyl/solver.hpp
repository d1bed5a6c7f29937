#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nsyl/graph.hpp"
#include "nsyl/semantics.hpp"
#include "nsyl/syntax.hpp"

namespace nsyl {

/// A cell is a total in/out valuation of the relevant atoms, represented by
/// the set of atoms that are in. Elements of a model are anonymous within
/// their cell.
using Cell = std::set<Atom>;

/// A model up to element identity: how many elements inhabit each cell.
struct CellVector {
  std::set<Atom> atoms;           // the relevant atoms
  std::map<Cell, Bound> counts;   // nonzero entries only

  Bound total() const;

  /// Materializes anonymous elements x0, x1, ... per cell.
  Structure expand() const;
};

enum class Engine { Brute, Witness, Refute };
enum class Verdict { Sat, Unsat, Unknown };

struct SatResult {
  Verdict verdict = Verdict::Unknown;
  Engine engine = Engine::Witness;
  std::uint64_t nodes = 0;
  std::optional<CellVector> model;  // present on Sat
};

struct SolverConfig {
  std::uint64_t node_budget = 10'000'000;
  std::size_t brute_atom_cap = 5;
  // Per-cell count ceiling for the brute engine; defaults to z+1, which
  // preserves satisfiability. Raise only to exercise the engine itself.
  std::optional<Bound> brute_cell_cap;
};

/// max(1, (z+1)·|Φ|): some model exists within this many elements whenever
/// Φ is satisfiable. Errors if a formula has a bound above z.
Bound small_model_bound(const FormulaSet& phi, Bound z);

/// Decides satisfiability of Φ ⊆ 𝒮†_z. Brute and witness are complete;
/// refute only ever reports Unsat or Unknown. On Sat the model is included
/// and has been re-checked against Φ.
SatResult satisfiable(const FormulaSet& phi, Bound z,
                      Engine engine = Engine::Witness,
                      const SolverConfig& config = {});

/// True iff Θ ∪ {negate(ψ)} is unsatisfiable.
bool entails(const FormulaSet& theta, const Formula& psi, Bound z,
             Engine engine = Engine::Witness, const SolverConfig& config = {});

/// One step of the witness-chain refutation trace.
struct TraceStep {
  enum class Kind { Witness, Subset, Merge, Violation };
  Kind kind;
  std::optional<Formula> cause;
  std::string detail;
};

struct RefutationResult {
  bool refuted = false;
  std::vector<TraceStep> trace;
};

/// Sound, incomplete refutation by witness-chain propagation: one witness
/// per MoreThan fact over a positive atom pair, membership saturation via
/// AtMost-0 (p,~q) subset facts, union-find merging forced by AtMost-1
/// budgets on positive pairs, and violation detection against AtMost-0
/// budgets. All other formula shapes are ignored, which is sound when
/// refuting.
RefutationResult refute_witness_chain(const FormulaSet& phi);

/// Rewrites a set in the extended language 𝒯 (𝒮₁ plus formulas <=3(p,p))
/// into an equisatisfiable subset of 𝒮₁, expanding each <=3(p,p) through a
/// fresh pair of atoms.
FormulaSet reduce_t_to_s1(const FormulaSet& phi);

/// Encodes 3-colourability of a graph as a 𝒯 set: satisfiable iff the graph
/// is 3-colourable.
FormulaSet reduce_3col(const Graph& g);

}  // namespace nsyl
