#include "aigsynt/absref.hpp"

#include <algorithm>
#include <ctime>
#include <set>

namespace aigsynt {

namespace {

double cpu_now() { return static_cast<double>(std::clock()) / CLOCKS_PER_SEC; }

}  // namespace

Abstraction initial_abstraction(const SafetyGame& g) {
    Abstraction a;
    std::set<unsigned> err_support;
    for (unsigned v : g.error.support()) err_support.insert(v);
    for (unsigned v : g.latch_vars) {
        if (err_support.count(v))
            a.precise.push_back(v);
        else
            a.dropped.push_back(v);
    }
    return a;
}

namespace {

// forall X_u [forall|exists dropped] exists X_c (!err & states(f(...))).
// The dropped latches' current values are exactly the abstraction's
// non-determinism: abstract regions never mention them.
Bdd abstract_cpre(const SafetyGame& g, const Abstraction& a, const Bdd& states, bool must) {
    Bdd moved = states.compose(g.transition_substitution());
    Bdd dropped_cube = g.mgr->cube_positive(a.dropped);
    if (must) {
        Bdd ok = (!g.error).and_exists(moved, g.c_cube);
        return ok.forall(dropped_cube).forall(g.u_cube);
    }
    Bdd inner_cube = g.c_cube & dropped_cube;
    Bdd ok = (!g.error).and_exists(moved, inner_cube);
    return ok.forall(g.u_cube);
}

}  // namespace

Bdd cpre_must(const SafetyGame& g, const Abstraction& a, const Bdd& states) {
    return abstract_cpre(g, a, states, true);
}

Bdd cpre_may(const SafetyGame& g, const Abstraction& a, const Bdd& states) {
    return abstract_cpre(g, a, states, false);
}

MayMustRegions solve_abstract(const SafetyGame& g, const Abstraction& a) {
    MayMustRegions r;
    Bdd must = g.mgr->one();
    for (;;) {
        Bdd next = must & cpre_must(g, a, must);
        if (next == must) break;
        must = next;
    }
    Bdd may = g.mgr->one();
    for (;;) {
        Bdd next = may & cpre_may(g, a, may);
        if (next == may) break;
        may = next;
    }
    r.must = must;
    r.may = may;
    return r;
}

bool refine(const SafetyGame& g, Abstraction& a, const MayMustRegions& r) {
    // Sub-states on the may/must boundary with a transition into W^M.
    Bdd moved = r.must.compose(g.transition_substitution());
    Bdd can_reach = (!g.error).and_exists(moved, g.c_cube).exists(g.u_cube);
    Bdd boundary = r.may & !r.must & can_reach;
    if (boundary.is_zero()) return false;

    std::set<unsigned> dropped_set(a.dropped.begin(), a.dropped.end());
    std::set<unsigned> to_add;
    Cube prime = boundary.prime_implicant();
    for (const auto& [v, pol] : prime.literals)
        if (dropped_set.count(v)) to_add.insert(v);
    if (to_add.empty()) {
        // The prime can skip dropped support variables; fall back to all of
        // the boundary's dropped support to keep the refinement monotone.
        for (unsigned v : boundary.support())
            if (dropped_set.count(v)) to_add.insert(v);
    }
    if (to_add.empty()) return false;

    Abstraction next;
    for (unsigned v : g.latch_vars) {
        bool precise = !dropped_set.count(v) || to_add.count(v);
        if (precise)
            next.precise.push_back(v);
        else
            next.dropped.push_back(v);
    }
    a = std::move(next);
    return true;
}

GameResult solve_absref(const SafetyGame& g, bool exact_region, const AbsrefObserver& observer) {
    double t0 = cpu_now();
    GameResult result;
    Abstraction a = initial_abstraction(g);
    for (;;) {
        ++result.iterations;
        MayMustRegions r = solve_abstract(g, a);
        if (observer) observer(a, r);
        if (g.init.leq(r.must)) {
            result.realizable = true;
            result.winning_region = exact_region ? solve_classic(g).winning_region : r.must;
            break;
        }
        if (!(g.init & !r.may).is_zero()) {
            result.realizable = false;
            result.winning_region = exact_region ? solve_classic(g).winning_region : r.may;
            break;
        }
        if (!refine(g, a, r)) {
            GameResult exact = solve_classic(g);
            result.realizable = exact.realizable;
            result.winning_region = exact.winning_region;
            break;
        }
    }
    result.stats.peak_nodes = g.mgr->peak_node_count();
    result.stats.cpu_seconds = cpu_now() - t0;
    return result;
}

}  // namespace aigsynt
