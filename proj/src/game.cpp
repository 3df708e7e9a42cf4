#include "aigsynt/game.hpp"

#include <ctime>
#include <stdexcept>

namespace aigsynt {

namespace {

double cpu_now() { return static_cast<double>(std::clock()) / CLOCKS_PER_SEC; }

}  // namespace

Bdd SafetyGame::lit_bdd(Literal l) const {
    Bdd f = gate_function.at(l.var());
    return l.negated() ? !f : f;
}

std::vector<std::pair<unsigned, Bdd>> SafetyGame::transition_substitution() const {
    std::vector<std::pair<unsigned, Bdd>> subs;
    subs.reserve(latch_vars.size());
    for (std::size_t i = 0; i < latch_vars.size(); ++i) subs.emplace_back(latch_vars[i], transitions[i]);
    return subs;
}

Bdd SafetyGame::env_step(const Bdd& err, const Bdd& target) const {
    Bdd moved = target.compose(transition_substitution());
    // forall X_c (err | moved) == !(exists X_c (!err & !moved))
    Bdd safe_c = (!err).and_exists(!moved, c_cube);
    return (!safe_c).exists(u_cube);
}

Bdd SafetyGame::sys_step(const Bdd& err, const Bdd& target) const {
    Bdd moved = target.compose(transition_substitution());
    Bdd ok = (!err).and_exists(moved, c_cube);
    return ok.forall(u_cube);
}

Bdd SafetyGame::attractor(const Bdd& err, const Bdd& seed, unsigned* iterations) const {
    Bdd acc = seed;
    unsigned count = 0;
    for (;;) {
        ++count;
        Bdd next = acc | env_step(err, acc);
        if (next == acc) break;
        acc = next;
    }
    if (iterations) *iterations = count;
    return acc;
}

SafetyGame build_game(BddManager& mgr, const Circuit& c, const ControlPartition& p) {
    if (c.outputs.size() != 1)
        throw std::invalid_argument("specification must have exactly one (error) output, got " +
                                    std::to_string(c.outputs.size()));
    SafetyGame g;
    g.mgr = &mgr;
    g.input_vars.assign(c.inputs.size(), 0);

    for (std::size_t pos : p.uncontrollable) {
        unsigned v = mgr.new_var();
        g.u_vars.push_back(v);
        g.input_vars[pos] = v;
    }
    for (std::size_t pos : p.controllable) {
        unsigned v = mgr.new_var();
        g.c_vars.push_back(v);
        g.input_vars[pos] = v;
    }
    for (std::size_t i = 0; i < c.latches.size(); ++i) g.latch_vars.push_back(mgr.new_var());

    g.gate_function.assign(c.max_var + 1, Bdd());
    g.gate_function[0] = mgr.zero();
    for (std::size_t i = 0; i < c.inputs.size(); ++i)
        g.gate_function[c.inputs[i].var()] = mgr.var(g.input_vars[i]);
    for (std::size_t i = 0; i < c.latches.size(); ++i)
        g.gate_function[c.latches[i].state.var()] = mgr.var(g.latch_vars[i]);
    for (const AndGate& gate : c.ands) {
        Bdd a = g.lit_bdd(gate.rhs0);
        Bdd b = g.lit_bdd(gate.rhs1);
        g.gate_function[gate.lhs.var()] = a & b;
    }

    for (const Latch& l : c.latches) g.transitions.push_back(g.lit_bdd(l.next));
    g.error = g.lit_bdd(c.outputs[0]);

    std::vector<std::pair<unsigned, bool>> zeros;
    for (unsigned v : g.latch_vars) zeros.emplace_back(v, false);
    g.init = mgr.cube(zeros);
    g.u_cube = mgr.cube_positive(g.u_vars);
    g.c_cube = mgr.cube_positive(g.c_vars);
    return g;
}

Bdd upre(const SafetyGame& g, const Bdd& states) {
    return g.env_step(g.mgr->zero(), states);
}

Bdd cpre(const SafetyGame& g, const Bdd& states) {
    return !upre(g, !states);
}

Bdd cpre_direct(const SafetyGame& g, const Bdd& states) {
    Bdd moved = states.compose(g.transition_substitution());
    return moved.exists(g.c_cube).forall(g.u_cube);
}

GameResult solve_classic(const SafetyGame& g) {
    double t0 = cpu_now();
    GameResult r;
    Bdd losing = g.attractor(g.error, g.mgr->zero(), &r.iterations);
    r.winning_region = !losing;
    r.realizable = g.init.leq(r.winning_region);
    r.stats.peak_nodes = g.mgr->peak_node_count();
    r.stats.cpu_seconds = cpu_now() - t0;
    return r;
}

GameResult solve_monolithic(const SafetyGame& g) {
    double t0 = cpu_now();
    BddManager& mgr = *g.mgr;

    std::vector<unsigned> primed;
    primed.reserve(g.latch_vars.size());
    for (std::size_t i = 0; i < g.latch_vars.size(); ++i) primed.push_back(mgr.new_var());

    Bdd relation = mgr.one();
    for (std::size_t i = 0; i < g.latch_vars.size(); ++i)
        relation &= !(mgr.var(primed[i]) ^ g.transitions[i]);
    Bdd primed_cube = mgr.cube_positive(primed);

    std::vector<std::pair<unsigned, Bdd>> to_primed, to_plain;
    for (std::size_t i = 0; i < g.latch_vars.size(); ++i) {
        to_primed.emplace_back(g.latch_vars[i], mgr.var(primed[i]));
        to_plain.emplace_back(primed[i], mgr.var(g.latch_vars[i]));
    }

    auto env_step_rel = [&](const Bdd& target) {
        Bdd target_primed = target.compose(to_primed);
        Bdd moved = relation.and_exists(target_primed, primed_cube);
        Bdd safe_c = (!g.error).and_exists(!moved, g.c_cube);
        return (!safe_c).exists(g.u_cube);
    };

    GameResult r;
    Bdd acc = mgr.zero();
    for (;;) {
        ++r.iterations;
        Bdd next = acc | env_step_rel(acc);
        if (next == acc) break;
        acc = next;
    }
    r.winning_region = !acc;
    r.realizable = g.init.leq(r.winning_region);
    r.stats.peak_nodes = mgr.peak_node_count();
    r.stats.cpu_seconds = cpu_now() - t0;
    return r;
}

}  // namespace aigsynt
