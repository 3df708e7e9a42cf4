#include "aigsynt/compositional.hpp"

#include <algorithm>
#include <ctime>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace aigsynt {

namespace {

double cpu_now() { return static_cast<double>(std::clock()) / CLOCKS_PER_SEC; }

// Conjunction frontier: expands through non-inverted edges into AND gates.
// Leaves are inputs, latches, constants, or inverted AND-gate literals.
void frontier(const Circuit& c, const std::vector<int>& gate_of_var, Literal lit,
              std::vector<Literal>& out, std::unordered_set<unsigned>& seen) {
    if (!lit.negated() && gate_of_var[lit.var()] >= 0) {
        const AndGate& g = c.ands[gate_of_var[lit.var()]];
        frontier(c, gate_of_var, g.rhs0, out, seen);
        frontier(c, gate_of_var, g.rhs1, out, seen);
        return;
    }
    if (seen.insert(lit.value).second) out.push_back(lit);
}

std::vector<Literal> frontier_of(const Circuit& c, const std::vector<int>& gate_of_var, Literal lit) {
    std::vector<Literal> out;
    std::unordered_set<unsigned> seen;
    frontier(c, gate_of_var, lit, out, seen);
    return out;
}

}  // namespace

Decomposition decompose_error(const Circuit& c, std::size_t max_disjuncts) {
    if (c.outputs.size() != 1) throw std::invalid_argument("decompose_error needs a single output");
    Literal err = c.outputs[0];

    std::vector<int> gate_of_var(c.max_var + 1, -1);
    for (std::size_t i = 0; i < c.ands.size(); ++i) gate_of_var[c.ands[i].lhs.var()] = static_cast<int>(i);

    Decomposition d;
    auto singleton = [&]() {
        d.disjuncts.clear();
        d.disjuncts.push_back({err});
        d.decomposed = false;
        return d;
    };

    if (err.negated() && gate_of_var[err.var()] >= 0) {
        // error = !(a & b & ...): one disjunct per negated conjunct
        std::vector<Literal> conj = frontier_of(c, gate_of_var, err.strip());
        if (conj.size() < 2 || conj.size() > max_disjuncts) return singleton();
        for (Literal l : conj) d.disjuncts.push_back({!l});
        d.decomposed = true;
        return d;
    }

    std::vector<Literal> conj = frontier_of(c, gate_of_var, err);
    std::vector<Literal> inverted_ands;
    for (Literal l : conj)
        if (l.negated() && gate_of_var[l.var()] >= 0) inverted_ands.push_back(l);
    if (inverted_ands.empty()) return singleton();

    // Push the negation through the widest inverted conjunct and distribute.
    Literal pick = inverted_ands[0];
    std::size_t pick_width = frontier_of(c, gate_of_var, pick.strip()).size();
    for (Literal l : inverted_ands) {
        std::size_t w = frontier_of(c, gate_of_var, l.strip()).size();
        if (w > pick_width) {
            pick = l;
            pick_width = w;
        }
    }
    std::vector<Literal> inner = frontier_of(c, gate_of_var, pick.strip());
    if (inner.size() < 2 || inner.size() > max_disjuncts) return singleton();

    std::vector<Literal> rest;
    for (Literal l : conj)
        if (l != pick) rest.push_back(l);
    for (Literal g : inner) {
        std::vector<Literal> cube = rest;
        cube.push_back(!g);
        d.disjuncts.push_back(std::move(cube));
    }
    d.decomposed = true;
    return d;
}

Bdd compile_disjunct(const SafetyGame& g, const std::vector<Literal>& cube) {
    Bdd acc = g.mgr->one();
    for (Literal l : cube) acc &= g.lit_bdd(l);
    return acc;
}

SubgameSolution solve_subgame(const SafetyGame& g, const Bdd& subgame_error, std::size_t index,
                              const CompositionalOptions& opts) {
    SubgameSolution s;
    s.index = index;
    s.error = subgame_error;

    Bdd losing;
    if (!opts.aggressive_cones) {
        losing = g.attractor(subgame_error, g.mgr->zero());
    } else {
        // Support-closed cone of the subgame error; transitions outside it are
        // replaced by free environment inputs. Exact because the cone is
        // closed: the fixpoint never reads the replaced functions.
        std::set<unsigned> latch_set(g.latch_vars.begin(), g.latch_vars.end());
        std::set<unsigned> cone;
        std::vector<unsigned> todo;
        for (unsigned v : subgame_error.support())
            if (latch_set.count(v)) {
                cone.insert(v);
                todo.push_back(v);
            }
        auto latch_pos = [&](unsigned v) {
            return static_cast<std::size_t>(
                std::find(g.latch_vars.begin(), g.latch_vars.end(), v) - g.latch_vars.begin());
        };
        while (!todo.empty()) {
            unsigned v = todo.back();
            todo.pop_back();
            for (unsigned dep : g.transitions[latch_pos(v)].support())
                if (latch_set.count(dep) && cone.insert(dep).second) todo.push_back(dep);
        }
        SafetyGame reduced = g;
        std::vector<unsigned> extra_u = g.u_vars;
        for (std::size_t i = 0; i < g.latch_vars.size(); ++i) {
            if (cone.count(g.latch_vars[i])) continue;
            unsigned fresh = g.mgr->new_var();
            reduced.transitions[i] = g.mgr->var(fresh);
            extra_u.push_back(fresh);
        }
        reduced.u_cube = g.mgr->cube_positive(extra_u);
        losing = reduced.attractor(subgame_error, g.mgr->zero());
    }

    s.region = !losing;
    Bdd moved = s.region.compose(g.transition_substitution());
    s.w = s.region & !subgame_error & moved;
    return s;
}

std::vector<SubgameSolution> solve_all_subgames(const SafetyGame& g, const Decomposition& d,
                                                const CompositionalOptions& opts) {
    std::vector<SubgameSolution> subs;
    subs.reserve(d.disjuncts.size());
    for (std::size_t i = 0; i < d.disjuncts.size(); ++i)
        subs.push_back(solve_subgame(g, compile_disjunct(g, d.disjuncts[i]), i, opts));
    return subs;
}

namespace {

// Fixpoint on a game whose objective is to keep the move relation inside
// `allowed`; the transition functions are first reduced with restrict.
GameResult solve_with_allowed_moves(const SafetyGame& g, const Bdd& allowed) {
    double t0 = cpu_now();
    GameResult r;
    if (allowed.is_zero()) {
        r.iterations = 1;
        r.winning_region = g.mgr->zero();
        r.realizable = false;
        r.stats.peak_nodes = g.mgr->peak_node_count();
        r.stats.cpu_seconds = cpu_now() - t0;
        return r;
    }
    SafetyGame reduced = g;
    for (Bdd& t : reduced.transitions) t = t.restrict_to(allowed);
    Bdd losing = reduced.attractor(!allowed, g.mgr->zero(), &r.iterations);
    r.winning_region = !losing;
    r.realizable = g.init.leq(r.winning_region);
    r.stats.peak_nodes = g.mgr->peak_node_count();
    r.stats.cpu_seconds = cpu_now() - t0;
    return r;
}

}  // namespace

GameResult aggregate_global(const SafetyGame& g, const std::vector<SubgameSolution>& subs) {
    if (subs.empty()) throw std::invalid_argument("aggregate_global needs at least one subgame");
    Bdd lambda = g.mgr->one();
    for (const SubgameSolution& s : subs) lambda &= s.w;
    return solve_with_allowed_moves(g, lambda);
}

GameResult aggregate_incremental(const SafetyGame& g, std::vector<SubgameSolution> subs) {
    if (subs.empty()) throw std::invalid_argument("aggregate_incremental needs at least one subgame");
    while (subs.size() > 1) {
        // Merge the two cheapest solutions first.
        std::size_t a = 0, b = 1;
        auto cost = [&](std::size_t i, std::size_t j) {
            return subs[i].w.node_count() + subs[j].w.node_count();
        };
        for (std::size_t i = 0; i < subs.size(); ++i)
            for (std::size_t j = i + 1; j < subs.size(); ++j)
                if (cost(i, j) < cost(a, b)) {
                    a = i;
                    b = j;
                }
        Bdd pair_w = subs[a].w & subs[b].w;
        GameResult merged = solve_with_allowed_moves(g, pair_w);
        SubgameSolution next;
        next.index = subs[a].index;
        next.error = !pair_w;
        next.region = merged.winning_region;
        Bdd moved = merged.winning_region.compose(g.transition_substitution());
        next.w = merged.winning_region & pair_w & moved;
        subs.erase(subs.begin() + static_cast<std::ptrdiff_t>(b));
        subs[a] = std::move(next);
    }
    return solve_with_allowed_moves(g, subs[0].w);
}

GameResult back_and_forth(const SafetyGame& g, const std::vector<SubgameSolution>& subs) {
    if (subs.empty()) throw std::invalid_argument("back_and_forth needs at least one subgame");
    double t0 = cpu_now();
    GameResult r;

    std::vector<Bdd> local_bad;
    local_bad.reserve(subs.size());
    Bdd global_bad = g.env_step(g.error, g.mgr->zero());
    for (const SubgameSolution& s : subs) {
        local_bad.push_back(!s.region);
        global_bad |= !s.region;
    }

    for (;;) {
        bool changed = false;
        ++r.iterations;
        Bdd next = global_bad | g.env_step(g.error, global_bad);
        if (next != global_bad) {
            global_bad = next;
            changed = true;
        }
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if ((global_bad & !local_bad[i]).is_zero()) continue;  // region untouched
            Bdd seed = local_bad[i] | global_bad;
            Bdd grown = g.attractor(subs[i].error, seed);
            if (grown != local_bad[i]) {
                local_bad[i] = grown;
                changed = true;
            }
            if (!(grown & !global_bad).is_zero()) {
                global_bad |= grown;
                changed = true;
            }
        }
        if (!changed) break;
    }

    r.winning_region = !global_bad;
    r.realizable = g.init.leq(r.winning_region);
    r.stats.peak_nodes = g.mgr->peak_node_count();
    r.stats.cpu_seconds = cpu_now() - t0;
    return r;
}

}  // namespace aigsynt
