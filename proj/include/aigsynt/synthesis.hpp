#pragma once

#include <utility>
#include <vector>

#include "aigsynt/game.hpp"

namespace aigsynt {

// Permissive winning-move relation over (L, X_u, X_c).
struct StrategyRelation {
    Bdd lambda;
};

// A controller circuit in the specification's shape: uncontrollable inputs
// and latches match the spec position for position, controllable inputs are
// re-driven by synthesized logic. gate_count is the solution's total number
// of AND gates. drivers records the literal now feeding each controllable
// input; their cones are kept alive through minimization.
struct Solution {
    Circuit circuit;
    std::size_t gate_count = 0;
    std::vector<std::pair<std::string, Literal>> drivers;
};

// lambda = W & !err & W(f(...)); throws when W is not fixpoint-stable
// (completeness over W would fail).
StrategyRelation extract_strategy(const SafetyGame& g, const Bdd& winning_region);

// Resolves controllable inputs one at a time in declaration order with the
// cofactor approach; don't-cares go to 0. Returns one function over
// (L, X_u) per controllable input, in partition order.
std::vector<Bdd> resolve_outputs(const SafetyGame& g, const StrategyRelation& rel);

// Rebuilds the specification with each controllable input replaced by a
// multiplexer decomposition of its function BDD.
Solution bdd_to_aig(const Circuit& spec, const ControlPartition& p, const SafetyGame& g,
                    const std::vector<Bdd>& functions);

// Constant propagation, structural hashing and dead-gate sweep; semantics
// preserving, never grows the gate count, idempotent.
Solution minimize(const Solution& s);

// Full pipeline on a realizable game.
Solution synthesize(const Circuit& spec, const ControlPartition& p, const SafetyGame& g,
                    const Bdd& winning_region);

}  // namespace aigsynt
