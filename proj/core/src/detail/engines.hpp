#pragma once

#include "nsyl/solver.hpp"

namespace nsyl::detail {

// Internal entry points behind satisfiable(); inputs are pre-validated.
SatResult brute_search(const FormulaSet& phi, Bound z,
                       const SolverConfig& config);
SatResult witness_search(const FormulaSet& phi, Bound z,
                         const SolverConfig& config);

}  // namespace nsyl::detail
