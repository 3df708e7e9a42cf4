#pragma once

#include <string>
#include <vector>

#include "aigsynt/aig_builder.hpp"
#include "aigsynt/aiger.hpp"

namespace aigsynt {

// Non-deterministic automaton with symbolic edge predicates. Predicates are
// boolean functions over the declared inputs, held as builder literals.
struct SymbolicNfa {
    struct Transition {
        std::size_t from;
        Literal predicate;
        std::size_t to;
    };
    std::size_t num_states = 0;
    std::vector<std::size_t> initial;
    std::vector<std::size_t> accepting;
    std::vector<Transition> transitions;

    std::size_t add_state() { return num_states++; }
};

// Washing-cycle scheduling: n tanks, reaction delay d (the emptying delay k
// equals d), t tanks per pipe. Latches encode automaton states plus one boot
// latch compensating the all-zero AIGER initialization.
Circuit gen_cycle_sched(unsigned n, unsigned d, unsigned t);

// Combinational A (m x n) * B (n x o) = C with C controllable.
Circuit gen_mult_matrix(unsigned m, unsigned n, unsigned o);

// Stored matrix B (m x n) repeatedly multiplied by the input matrix A
// (n x n); the first n/2 columns of A are controllable; the error is a
// constant row in B. n must be even.
Circuit gen_mult_matrix_dyn(unsigned m, unsigned n);

// n-bit counter: increments on tick, resets on clear; error when the counter
// is saturated and clear is not raised.
Circuit gen_counter(unsigned n);

// Combinational adder: error when the controllable sum differs from
// a + b mod 2^n.
Circuit gen_adder(unsigned n);

std::string cycle_sched_name(unsigned n, unsigned d, unsigned t);
std::string mult_matrix_name(unsigned m, unsigned n, unsigned o);
std::string mult_matrix_dyn_name(unsigned m, unsigned n);
std::string counter_name(unsigned n);
std::string adder_name(unsigned n);

// Exposed for tests: the union automaton underlying gen_cycle_sched,
// together with the builder carrying the input literals.
struct WashingSpec {
    AigBuilder builder;
    SymbolicNfa nfa;
    std::vector<Literal> push, fill, empty;
    Literal light;
};
WashingSpec build_washing_spec(unsigned n, unsigned d, unsigned t);

struct ClassifyInput {
    bool finished = false;     // returned a verdict within its budget
    bool realizable = false;   // meaningful when finished
    double seconds = 0.0;      // meaningful when finished
    std::optional<unsigned> verified_size;  // AND gates of a verified solution
};

// Aggregates classification runs per the meta-format: unanimous status,
// solved-by fraction, minimal time, minimal verified size. Conflicting
// verdicts throw (they indicate a solver bug).
MetaInfo classify(const std::vector<ClassifyInput>& runs, const std::string& experiment_label);

}  // namespace aigsynt
