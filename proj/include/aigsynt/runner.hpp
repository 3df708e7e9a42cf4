#pragma once

#include <map>
#include <optional>
#include <string>

#include "aigsynt/aiger.hpp"
#include "aigsynt/bdd.hpp"
#include "aigsynt/synthesis.hpp"

namespace aigsynt {

enum class Algorithm { classic, monolithic, global, incremental, backforth, absref, portfolio };

std::string to_string(Algorithm a);
std::optional<Algorithm> algorithm_from_string(const std::string& name);

struct SolveOptions {
    bool auto_reorder = false;
    ReclamationPolicy reclamation = ReclamationPolicy::eager;
    std::size_t decomposition_cap = 128;
    bool aggressive_cones = false;
    bool synthesize = false;
};

// Parses reorder=on/off, reclaim=eager/deferred, decomp-cap=N,
// cones=aggressive/conservative; unknown keys throw.
SolveOptions options_from_flags(const std::map<std::string, std::string>& flags);

struct SolveRun {
    bool realizable = false;
    unsigned iterations = 0;
    std::size_t peak_nodes = 0;
    double solve_seconds = 0.0;
    std::optional<Solution> solution;  // present for realizable synthesis runs
};

// Builds a fresh manager and game for the circuit and runs one algorithm
// (portfolio is handled by the arena scheduler, not here).
SolveRun run_solver(Algorithm algorithm, const Circuit& c, const SolveOptions& opts);

}  // namespace aigsynt
