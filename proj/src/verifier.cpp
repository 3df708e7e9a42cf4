#include "aigsynt/verifier.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#include "aigsynt/bdd.hpp"
#include "aigsynt/game.hpp"

namespace aigsynt {

std::string to_string(Verdict::Status s) {
    switch (s) {
        case Verdict::Status::verified: return "verified";
        case Verdict::Status::falsified: return "falsified";
        default: return "timeout";
    }
}

SyntacticReport check_syntactic(const Circuit& spec, const Circuit& sol) {
    SyntacticReport r;
    auto fail = [&](std::string msg) {
        r.pass = false;
        r.issues.push_back(std::move(msg));
    };

    ControlPartition spec_part = partition_inputs(spec);
    if (sol.inputs.size() != spec_part.uncontrollable.size())
        fail("input count mismatch: solution has " + std::to_string(sol.inputs.size()) +
             " free inputs, specification has " + std::to_string(spec_part.uncontrollable.size()) +
             " uncontrollable inputs");
    for (std::size_t i = 0; i < sol.inputs.size(); ++i) {
        const std::string* name = sol.symbol(SymbolKind::input, i);
        if (name && name->rfind(kControllablePrefix, 0) == 0)
            fail("controllable input '" + *name + "' is still free in the solution");
    }
    for (std::size_t i = 0; i < std::min(sol.inputs.size(), spec_part.uncontrollable.size()); ++i) {
        const std::string* want = spec.symbol(SymbolKind::input, spec_part.uncontrollable[i]);
        const std::string* got = sol.symbol(SymbolKind::input, i);
        if (want && got && *want != *got)
            fail("uncontrollable input " + std::to_string(i) + " renamed: '" + *want + "' vs '" +
                 *got + "'");
    }
    if (sol.latches.size() != spec.latches.size())
        fail("latch count mismatch: " + std::to_string(sol.latches.size()) + " vs " +
             std::to_string(spec.latches.size()));
    for (std::size_t i = 0; i < std::min(sol.latches.size(), spec.latches.size()); ++i) {
        const std::string* want = spec.symbol(SymbolKind::latch, i);
        const std::string* got = sol.symbol(SymbolKind::latch, i);
        if (want && got && *want != *got)
            fail("latch " + std::to_string(i) + " renamed: '" + *want + "' vs '" + *got + "'");
    }
    if (sol.outputs.size() != 1)
        fail("solution must have exactly one output, got " + std::to_string(sol.outputs.size()));
    try {
        sol.validate();
    } catch (const std::exception& e) {
        fail(std::string("solution is structurally invalid: ") + e.what());
    }
    return r;
}

Verdict model_check(const Circuit& sol, double timeout_seconds) {
    if (sol.outputs.size() != 1)
        throw std::invalid_argument("model_check expects a single-output circuit");
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(timeout_seconds));

    BddManager mgr;
    // All remaining inputs are environment moves in the closed loop.
    ControlPartition all_env;
    for (std::size_t i = 0; i < sol.inputs.size(); ++i) all_env.uncontrollable.push_back(i);
    SafetyGame g = build_game(mgr, sol, all_env);

    std::vector<unsigned> primed;
    for (std::size_t i = 0; i < g.latch_vars.size(); ++i) primed.push_back(mgr.new_var());
    Bdd relation = mgr.one();
    for (std::size_t i = 0; i < g.latch_vars.size(); ++i)
        relation &= !(mgr.var(primed[i]) ^ g.transitions[i]);

    std::vector<unsigned> present;
    present.insert(present.end(), g.latch_vars.begin(), g.latch_vars.end());
    present.insert(present.end(), g.u_vars.begin(), g.u_vars.end());
    Bdd present_cube = mgr.cube_positive(present);
    std::vector<std::pair<unsigned, Bdd>> to_plain;
    for (std::size_t i = 0; i < g.latch_vars.size(); ++i)
        to_plain.emplace_back(primed[i], mgr.var(g.latch_vars[i]));

    Bdd err_now = g.error.exists(g.u_cube);  // states where some input raises out

    Verdict v;
    std::vector<Bdd> layers;
    Bdd reached = g.init;
    layers.push_back(reached);
    Bdd frontier = g.init;
    for (;;) {
        ++v.reachable_iterations;
        if (!(reached & err_now).is_zero()) {
            // Reconstruct one trace by stepping backwards through the layers,
            // always jumping to the earliest layer that still has a
            // predecessor; the picked state is then reachable in exactly that
            // many steps.
            std::size_t step = layers.size() - 1;
            while (step > 0 && !(layers[step - 1] & err_now).is_zero()) --step;
            Bdd state = layers[step] & err_now;
            std::vector<bool> s_bits = state.pick_minterm(g.latch_vars);
            auto cube_of = [&](const std::vector<bool>& bits) {
                std::vector<std::pair<unsigned, bool>> lits;
                for (std::size_t i = 0; i < g.latch_vars.size(); ++i)
                    lits.emplace_back(g.latch_vars[i], bits[i]);
                return mgr.cube(lits);
            };
            Bdd latch_cube = mgr.cube_positive(g.latch_vars);
            Bdd bad_inputs = (g.error & cube_of(s_bits)).exists(latch_cube);
            std::vector<std::vector<bool>> rev;
            rev.push_back(bad_inputs.pick_minterm(g.u_vars));
            std::vector<unsigned> both = g.latch_vars;
            both.insert(both.end(), g.u_vars.begin(), g.u_vars.end());
            while (step > 0) {
                Bdd succ_next = mgr.one();
                for (std::size_t i = 0; i < g.latch_vars.size(); ++i)
                    succ_next &= s_bits[i] ? g.transitions[i] : !g.transitions[i];
                std::size_t j = step - 1;
                while (j > 0 && !(layers[j - 1] & succ_next).is_zero()) --j;
                Bdd pred = layers[j] & succ_next;
                std::vector<bool> pick = pred.pick_minterm(both);
                s_bits.assign(pick.begin(),
                              pick.begin() + static_cast<std::ptrdiff_t>(g.latch_vars.size()));
                rev.emplace_back(pick.begin() + static_cast<std::ptrdiff_t>(g.latch_vars.size()),
                                 pick.end());
                step = j;
            }
            v.status = Verdict::Status::falsified;
            v.witness.assign(rev.rbegin(), rev.rend());
            return v;
        }
        Bdd image_primed = reached.and_exists(relation, present_cube);
        Bdd image = image_primed.compose(to_plain);
        Bdd next = reached | image;
        if (next == reached) break;
        reached = next;
        layers.push_back(reached);
        if (std::chrono::steady_clock::now() > deadline) {
            v.status = Verdict::Status::timeout;
            return v;
        }
    }
    v.status = Verdict::Status::verified;
    return v;
}

SimulationResult simulate(const Circuit& c, const std::vector<std::vector<bool>>& trace) {
    SimulationResult out;
    std::vector<bool> latches(c.latches.size(), false);
    std::vector<bool> value(c.max_var + 1, false);
    for (const std::vector<bool>& inputs : trace) {
        if (inputs.size() != c.inputs.size())
            throw std::invalid_argument("simulate: input vector width " +
                                        std::to_string(inputs.size()) + " does not cover " +
                                        std::to_string(c.inputs.size()) + " inputs");
        for (std::size_t i = 0; i < c.inputs.size(); ++i) value[c.inputs[i].var()] = inputs[i];
        for (std::size_t i = 0; i < c.latches.size(); ++i) value[c.latches[i].state.var()] = latches[i];
        auto lit_val = [&](Literal l) {
            bool v = l.is_constant() ? false : value[l.var()];
            return l.negated() ? !v : v;
        };
        for (const AndGate& g : c.ands) value[g.lhs.var()] = lit_val(g.rhs0) && lit_val(g.rhs1);
        std::vector<bool> step_out;
        step_out.reserve(c.outputs.size());
        for (Literal o : c.outputs) step_out.push_back(lit_val(o));
        out.outputs.push_back(std::move(step_out));
        for (std::size_t i = 0; i < c.latches.size(); ++i) latches[i] = lit_val(c.latches[i].next);
    }
    out.final_latches = latches;
    return out;
}

std::string format_witness(const std::vector<std::vector<bool>>& witness) {
    std::ostringstream out;
    for (const auto& step : witness) {
        for (bool b : step) out << (b ? '1' : '0');
        out << '\n';
    }
    return out.str();
}

}  // namespace aigsynt
