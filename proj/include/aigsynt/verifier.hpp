#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aigsynt/aiger.hpp"

namespace aigsynt {

struct SyntacticReport {
    bool pass = true;
    std::vector<std::string> issues;
};

// Conformance of a synthesized solution against its specification:
// uncontrollable inputs and latches match position for position, no
// controllable input remains free, exactly one output.
SyntacticReport check_syntactic(const Circuit& spec, const Circuit& sol);

struct Verdict {
    enum class Status { verified, falsified, timeout };
    Status status = Status::verified;
    // Uncontrollable input vector per step, for falsified verdicts; replays
    // to error = 1 under simulate().
    std::vector<std::vector<bool>> witness;
    unsigned reachable_iterations = 0;
};

std::string to_string(Verdict::Status s);

// Forward reachability over the closed-loop circuit (all remaining inputs are
// environment-driven). Verified iff no reachable state can raise the error.
Verdict model_check(const Circuit& sol, double timeout_seconds = 3600.0);

struct SimulationResult {
    std::vector<std::vector<bool>> outputs;  // one vector per step
    std::vector<bool> final_latches;
};

// Cycle-accurate evaluation; latches start at zero. Every vector must cover
// all circuit inputs, in input-position order.
SimulationResult simulate(const Circuit& c, const std::vector<std::vector<bool>>& trace);

// One line per step: the uncontrollable bits of that step.
std::string format_witness(const std::vector<std::vector<bool>>& witness);

}  // namespace aigsynt
