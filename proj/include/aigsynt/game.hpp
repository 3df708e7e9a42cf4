#pragma once

#include <optional>
#include <vector>

#include "aigsynt/aiger.hpp"
#include "aigsynt/bdd.hpp"

namespace aigsynt {

struct GameStats {
    std::size_t peak_nodes = 0;
    double cpu_seconds = 0.0;
};

struct GameResult {
    bool realizable = false;
    Bdd winning_region;  // over latch variables
    unsigned iterations = 0;
    GameStats stats;
};

// Symbolic two-player safety game compiled from a monitor circuit.
// States are latch valuations; the environment moves on X_u, the system on
// X_c. Bound to one manager, single-threaded like the manager itself.
struct SafetyGame {
    BddManager* mgr = nullptr;

    std::vector<unsigned> latch_vars;  // declaration order
    std::vector<unsigned> u_vars;
    std::vector<unsigned> c_vars;
    std::vector<unsigned> input_vars;  // by circuit input position

    std::vector<Bdd> transitions;  // next-state function per latch
    Bdd error;                     // over (L, X_u, X_c)
    Bdd init;                      // all latches zero

    Bdd u_cube;
    Bdd c_cube;

    // Compiled function of every circuit literal (indexed by variable).
    std::vector<Bdd> gate_function;

    Bdd lit_bdd(Literal l) const;
    std::vector<std::pair<unsigned, Bdd>> transition_substitution() const;

    // Environment one-step operator with the error signal folded in:
    // { s | exists x_u forall x_c : err(s,x_u,x_c) or target(f(s,x_u,x_c)) }.
    // This single definition is shared by every solver.
    Bdd env_step(const Bdd& err, const Bdd& target) const;

    // System one-step operator, the dual: forall x_u exists x_c.
    Bdd sys_step(const Bdd& err, const Bdd& target) const;

    // Least fixpoint of env_step over a given error function; returns the
    // attractor of the unsafe behavior and the iteration count.
    Bdd attractor(const Bdd& err, const Bdd& seed, unsigned* iterations = nullptr) const;
};

// Compiles the circuit into BDDs. Variable order: X_u, X_c, latches, each in
// declaration order. The circuit must have exactly one output (the error).
SafetyGame build_game(BddManager& mgr, const Circuit& c, const ControlPartition& p);

// Plain one-step operators (no error folding), as exposed operations.
Bdd upre(const SafetyGame& g, const Bdd& states);
Bdd cpre(const SafetyGame& g, const Bdd& states);
Bdd cpre_direct(const SafetyGame& g, const Bdd& states);

// Backward fixpoint over the partitioned transition functions.
GameResult solve_classic(const SafetyGame& g);

// Same contract, computed through an explicit transition relation over primed
// latch copies; kept for cross-validation and measurement.
GameResult solve_monolithic(const SafetyGame& g);

}  // namespace aigsynt
