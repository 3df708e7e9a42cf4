#include <random>

#include "aigsynt/aig_builder.hpp"
#include "aigsynt/benchgen.hpp"
#include "aigsynt/compositional.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aigsynt;

namespace {

// The worked decomposition example: error = x1 & !(x2 & (!x3 & x4)) over four
// uncontrollable inputs.
Circuit decomposition_example() {
    AigBuilder b;
    Literal x1 = b.add_input("x1");
    Literal x2 = b.add_input("x2");
    Literal x3 = b.add_input("x3");
    Literal x4 = b.add_input("x4");
    Literal inner = b.land(!x3, x4);
    Literal phi2 = b.land(x2, inner);
    b.add_output(b.land(x1, !phi2));
    return b.build();
}

std::vector<Circuit> small_corpus() {
    std::vector<Circuit> corpus;
    corpus.push_back(gen_counter(1));
    corpus.push_back(gen_counter(2));
    corpus.push_back(gen_counter(4));
    corpus.push_back(gen_adder(1));
    corpus.push_back(gen_adder(2));
    corpus.push_back(gen_mult_matrix(1, 1, 1));
    corpus.push_back(gen_mult_matrix(1, 2, 2));
    corpus.push_back(gen_mult_matrix(2, 2, 2));
    corpus.push_back(gen_mult_matrix_dyn(1, 2));
    corpus.push_back(gen_mult_matrix_dyn(2, 2));
    corpus.push_back(gen_mult_matrix_dyn(3, 2));
    corpus.push_back(gen_cycle_sched(1, 1, 1));
    return corpus;
}

}  // namespace

TEST_CASE("decomposition of the worked example") {
    Circuit c = decomposition_example();
    Decomposition d = decompose_error(c);
    REQUIRE(d.decomposed);
    REQUIRE(d.disjuncts.size() == 3);

    BddManager mgr;
    SafetyGame g = build_game(mgr, c, partition_inputs(c));
    Bdd x1 = g.gate_function[c.inputs[0].var()];
    Bdd x2 = g.gate_function[c.inputs[1].var()];
    Bdd x3 = g.gate_function[c.inputs[2].var()];
    Bdd x4 = g.gate_function[c.inputs[3].var()];
    std::vector<Bdd> expected{x1 & !x2, x1 & x3, x1 & !x4};
    std::vector<bool> matched(3, false);
    for (const auto& cube : d.disjuncts) {
        Bdd e = compile_disjunct(g, cube);
        bool found = false;
        for (std::size_t i = 0; i < expected.size(); ++i)
            if (!matched[i] && e == expected[i]) {
                matched[i] = true;
                found = true;
                break;
            }
        CHECK(found);
    }
}

TEST_CASE("pure conjunction cannot be decomposed") {
    AigBuilder b;
    Literal x1 = b.add_input("x1");
    Literal x2 = b.add_input("x2");
    b.add_output(b.land(x1, x2));
    Circuit c = b.build();
    Decomposition d = decompose_error(c);
    CHECK(!d.decomposed);
    CHECK(d.disjuncts.size() == 1);
}

TEST_CASE("decomposition cap falls back to the singleton") {
    Circuit c = gen_mult_matrix(3, 1, 3);  // nine disjuncts
    CHECK(decompose_error(c).decomposed);
    Decomposition capped = decompose_error(c, 4);
    CHECK(!capped.decomposed);
    CHECK(capped.disjuncts.size() == 1);
}

TEST_CASE("disjunction of disjuncts equals the error function") {
    for (const Circuit& c : small_corpus()) {
        Decomposition d = decompose_error(c);
        BddManager mgr;
        SafetyGame g = build_game(mgr, c, partition_inputs(c));
        Bdd joined = mgr.zero();
        for (const auto& cube : d.disjuncts) joined |= compile_disjunct(g, cube);
        CHECK(joined == g.error);
    }
}

TEST_CASE("subgame solutions") {
    Circuit c = gen_counter(2);
    BddManager mgr;
    SafetyGame g = build_game(mgr, c, partition_inputs(c));

    SUBCASE("empty subgame error is fully winning") {
        SubgameSolution s = solve_subgame(g, mgr.zero());
        CHECK(s.w.is_one());
    }
    SUBCASE("singleton decomposition reproduces the classic region") {
        SubgameSolution s = solve_subgame(g, g.error);
        CHECK(s.region == solve_classic(g).winning_region);
    }
    SUBCASE("winning valuations never raise the subgame error") {
        Decomposition d = decompose_error(c);
        for (const SubgameSolution& s : solve_all_subgames(g, d))
            CHECK((s.w & s.error).is_zero());
    }
}

TEST_CASE("all aggregators match solve_classic on the corpus") {
    for (const Circuit& c : small_corpus()) {
        ControlPartition p = partition_inputs(c);
        BddManager mgr;
        SafetyGame g = build_game(mgr, c, p);
        GameResult classic = solve_classic(g);
        Decomposition d = decompose_error(c);
        std::vector<SubgameSolution> subs = solve_all_subgames(g, d);

        GameResult glob = aggregate_global(g, subs);
        CHECK(glob.realizable == classic.realizable);
        CHECK(glob.winning_region == classic.winning_region);

        GameResult incr = aggregate_incremental(g, subs);
        CHECK(incr.realizable == classic.realizable);
        CHECK(incr.winning_region == classic.winning_region);

        GameResult bf = back_and_forth(g, subs);
        CHECK(bf.realizable == classic.realizable);
        CHECK(bf.winning_region == classic.winning_region);

        // aggressive cone reduction is exact as well
        CompositionalOptions aggressive;
        aggressive.aggressive_cones = true;
        std::vector<SubgameSolution> subs2 = solve_all_subgames(g, d, aggressive);
        GameResult glob2 = aggregate_global(g, subs2);
        CHECK(glob2.realizable == classic.realizable);
    }
}

TEST_CASE("the paper's phi1 example is unrealizable both ways") {
    // all four inputs uncontrollable: the environment can raise the error
    Circuit c = decomposition_example();
    ControlPartition p = partition_inputs(c);
    test::ExplicitGame oracle(c, p);
    CHECK(!oracle.realizable());

    BddManager mgr;
    SafetyGame g = build_game(mgr, c, p);
    CHECK(!solve_classic(g).realizable);
    Decomposition d = decompose_error(c);
    std::vector<SubgameSolution> subs = solve_all_subgames(g, d);
    CHECK(!aggregate_global(g, subs).realizable);
}

TEST_CASE("pairing order does not change the incremental verdict") {
    std::mt19937_64 rng(5);
    int instances = 0;
    for (const Circuit& c : small_corpus()) {
        Decomposition d = decompose_error(c);
        if (!d.decomposed) continue;
        ++instances;
        BddManager mgr;
        SafetyGame g = build_game(mgr, c, partition_inputs(c));
        std::vector<SubgameSolution> subs = solve_all_subgames(g, d);
        GameResult base = aggregate_incremental(g, subs);
        std::shuffle(subs.begin(), subs.end(), rng);
        GameResult shuffled = aggregate_incremental(g, std::move(subs));
        CHECK(base.realizable == shuffled.realizable);
    }
    CHECK(instances >= 5);
}

TEST_CASE("excluded valuations are losing in some subgame") {
    Circuit c = gen_mult_matrix(2, 2, 2);
    BddManager mgr;
    SafetyGame g = build_game(mgr, c, partition_inputs(c));
    Decomposition d = decompose_error(c);
    std::vector<SubgameSolution> subs = solve_all_subgames(g, d);
    Bdd lambda = mgr.one();
    for (const SubgameSolution& s : subs) lambda &= s.w;
    Bdd outside = !lambda;
    std::vector<unsigned> all_vars;
    all_vars.insert(all_vars.end(), g.latch_vars.begin(), g.latch_vars.end());
    all_vars.insert(all_vars.end(), g.u_vars.begin(), g.u_vars.end());
    all_vars.insert(all_vars.end(), g.c_vars.begin(), g.c_vars.end());
    for (int i = 0; i < 50 && !outside.is_zero(); ++i) {
        std::vector<bool> m = outside.pick_minterm(all_vars);
        std::vector<bool> assignment(mgr.num_vars(), false);
        for (std::size_t j = 0; j < all_vars.size(); ++j) assignment[all_vars[j]] = m[j];
        bool in_some_losing = false;
        for (const SubgameSolution& s : subs) in_some_losing |= !s.w.eval(assignment);
        CHECK(in_some_losing);
        // exclude this minterm and sample again
        std::vector<std::pair<unsigned, bool>> lits;
        for (std::size_t j = 0; j < all_vars.size(); ++j) lits.emplace_back(all_vars[j], m[j]);
        outside &= !mgr.cube(lits);
    }
}
