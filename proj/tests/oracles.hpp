#pragma once

// Independent test oracles: explicit truth tables, explicit-state game
// solving, and direct expression matching for the washing-cycle languages.
// Nothing here goes through the BDD engine except where a conversion is the
// point of the test.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "aigsynt/aiger.hpp"
#include "aigsynt/bdd.hpp"

namespace aigsynt::test {

// Boolean function over positions 0..nvars-1 as an explicit table; the
// assignment index encodes position value in bit i.
struct TruthTable {
    unsigned nvars = 0;
    std::vector<bool> bits;  // size 2^nvars

    static TruthTable constant(unsigned nvars, bool value);
    static TruthTable projection(unsigned nvars, unsigned pos);
    static TruthTable random(unsigned nvars, std::mt19937_64& rng);

    bool at(std::uint32_t assignment) const { return bits[assignment]; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(bits.size()); }

    TruthTable operator&(const TruthTable& o) const;
    TruthTable operator|(const TruthTable& o) const;
    TruthTable operator^(const TruthTable& o) const;
    TruthTable operator!() const;
    TruthTable exists(const std::vector<unsigned>& positions) const;
    TruthTable forall(const std::vector<unsigned>& positions) const;
    // Simultaneous substitution position -> function.
    TruthTable compose(const std::map<unsigned, TruthTable>& subst) const;

    friend bool operator==(const TruthTable&, const TruthTable&) = default;
};

// Builds the BDD of a table over the given manager variables (position i maps
// to var_ids[i]).
Bdd to_bdd(BddManager& mgr, const TruthTable& tt, const std::vector<unsigned>& var_ids);

// Evaluates the BDD on every assignment of the table and compares.
bool agrees(const Bdd& f, const TruthTable& tt, const std::vector<unsigned>& var_ids,
            unsigned num_manager_vars);

// ---------------------------------------------------------------------------

// Explicit-state view of a specification circuit.
class ExplicitGame {
public:
    ExplicitGame(const Circuit& c, const ControlPartition& p);

    unsigned num_latches() const { return static_cast<unsigned>(circuit_.latches.size()); }
    unsigned num_u() const { return static_cast<unsigned>(part_.uncontrollable.size()); }
    unsigned num_c() const { return static_cast<unsigned>(part_.controllable.size()); }

    // State bit i = latch i; input bits by position within each group.
    struct Step {
        std::uint64_t next_state;
        bool error;
    };
    Step step(std::uint64_t state, std::uint32_t u_bits, std::uint32_t c_bits) const;

    // Least fixpoint of the uniform one-step environment operator; the
    // returned set is indexed by state.
    std::vector<bool> attractor() const;
    bool realizable() const;

private:
    Circuit circuit_;
    ControlPartition part_;
};

// ---------------------------------------------------------------------------

// Direct matcher for the washing-cycle error language: prefix membership per
// expression family, evaluated on raw signal words.
struct WashingWord {
    // indexed [step][tank]
    std::vector<std::vector<bool>> push, fill, empty;
    std::vector<bool> light;
    std::size_t length() const { return light.size(); }
};

bool washing_prefix_in_language(unsigned n, unsigned d, unsigned t, const WashingWord& w,
                                std::size_t prefix_len);

}  // namespace aigsynt::test
