#pragma once

#include <cstddef>
#include <vector>

#include "aigsynt/game.hpp"

namespace aigsynt {

// Disjunctive split of the error function. Each disjunct is a conjunction of
// AIG literals; their disjunction equals the original error function.
struct Decomposition {
    std::vector<std::vector<Literal>> disjuncts;
    bool decomposed = false;  // true iff at least two disjuncts were produced
};

inline constexpr std::size_t kDefaultDecompositionCap = 128;

// Walks the non-inverted AND edges from the error output. An inverted edge
// into an AND node lets the negation be pushed down and distributed; a pure
// conjunction of leaves cannot be split and yields a singleton. Splits that
// would exceed max_disjuncts fall back to the singleton as well.
Decomposition decompose_error(const Circuit& c, std::size_t max_disjuncts = kDefaultDecompositionCap);

struct SubgameSolution {
    std::size_t index = 0;
    Bdd error;   // e_i over (L, X_u, X_c)
    Bdd region;  // W_i over L
    Bdd w;       // winning valuations: W_i & !e_i & W_i(f(...))
};

struct CompositionalOptions {
    bool aggressive_cones = false;  // replace out-of-cone transitions by free inputs
};

Bdd compile_disjunct(const SafetyGame& g, const std::vector<Literal>& cube);

SubgameSolution solve_subgame(const SafetyGame& g, const Bdd& subgame_error, std::size_t index = 0,
                              const CompositionalOptions& opts = CompositionalOptions());

std::vector<SubgameSolution> solve_all_subgames(const SafetyGame& g, const Decomposition& d,
                                                const CompositionalOptions& opts = CompositionalOptions());

// Intersects all winning valuations and solves the global game with the
// objective of staying inside the intersection; transition functions are
// reduced with the restrict operator first.
GameResult aggregate_global(const SafetyGame& g, const std::vector<SubgameSolution>& subs);

// Repeatedly merges the two cheapest solutions (by node count) until one
// remains.
GameResult aggregate_incremental(const SafetyGame& g, std::vector<SubgameSolution> subs);

// Alternates one global env step with local fixpoint recomputation in the
// subgames whose winning region shrank, until stabilization.
GameResult back_and_forth(const SafetyGame& g, const std::vector<SubgameSolution>& subs);

}  // namespace aigsynt
