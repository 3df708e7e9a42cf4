#pragma once

#include <functional>
#include <vector>

#include "aigsynt/game.hpp"

namespace aigsynt {

// Variable-dropping abstraction: dropped latches are non-deterministically
// updated on each round; precise latches keep their transition functions.
struct Abstraction {
    std::vector<unsigned> precise;  // latch variable ids, declaration order
    std::vector<unsigned> dropped;
};

struct MayMustRegions {
    Bdd must;  // W^M: surely winning, over precise latches
    Bdd may;   // W^m: possibly winning
};

Abstraction initial_abstraction(const SafetyGame& g);

// Controllable predecessors under the two resolutions of the dropped-variable
// non-determinism: must resolves it for the environment (forall X_u forall
// dropped exists X_c), may for the system (forall X_u exists X_c exists
// dropped). Both fold the error signal into the step.
Bdd cpre_must(const SafetyGame& g, const Abstraction& a, const Bdd& states);
Bdd cpre_may(const SafetyGame& g, const Abstraction& a, const Bdd& states);

MayMustRegions solve_abstract(const SafetyGame& g, const Abstraction& a);

// Grows the precise set using a prime implicant of the may/must boundary.
// Returns false when no progress is possible (caller falls back to the
// exact game).
bool refine(const SafetyGame& g, Abstraction& a, const MayMustRegions& r);

// Called once per abstract iteration, before the verdict tests.
using AbsrefObserver = std::function<void(const Abstraction&, const MayMustRegions&)>;

GameResult solve_absref(const SafetyGame& g, bool exact_region = false,
                        const AbsrefObserver& observer = nullptr);

}  // namespace aigsynt
