#include <random>

#include "aigsynt/benchgen.hpp"
#include "aigsynt/game.hpp"
#include "aigsynt/synthesis.hpp"
#include "aigsynt/verifier.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aigsynt;

TEST_CASE("generated circuits round-trip and carry the meta paragraph") {
    std::vector<Circuit> all;
    all.push_back(gen_cycle_sched(1, 1, 1));
    all.push_back(gen_cycle_sched(2, 1, 2));
    all.push_back(gen_cycle_sched(3, 2, 2));
    all.push_back(gen_mult_matrix(2, 3, 2));
    all.push_back(gen_mult_matrix_dyn(2, 2));
    all.push_back(gen_counter(4));
    all.push_back(gen_adder(3));
    for (const Circuit& c : all) {
        c.validate();
        CHECK(parse_aag(write_aag(c)) == c);
        CHECK(parse_meta(c).status == MetaInfo::Status::unknown);
        // every controllable input carries the prefix, every input has a name
        ControlPartition p = partition_inputs(c);
        CHECK(p.uncontrollable.size() + p.controllable.size() == c.inputs.size());
        for (std::size_t pos : p.controllable)
            CHECK(c.symbol(SymbolKind::input, pos)->rfind(kControllablePrefix, 0) == 0);
    }
}

TEST_CASE("washing spec structure") {
    SUBCASE("latch count is the state count plus the boot latch") {
        for (auto [n, d, t] : {std::tuple<unsigned, unsigned, unsigned>{1, 1, 1},
                               {2, 1, 1},
                               {2, 2, 2},
                               {3, 1, 3}}) {
            WashingSpec spec = build_washing_spec(n, d, t);
            Circuit c = gen_cycle_sched(n, d, t);
            CHECK(c.latches.size() == spec.nfa.num_states + 1);
        }
    }
    SUBCASE("single-tank pipes generate no mutual-exclusion state") {
        WashingSpec with_pipe = build_washing_spec(2, 1, 2);
        WashingSpec without = build_washing_spec(2, 1, 1);
        CHECK(with_pipe.nfa.num_states == without.nfa.num_states + 1);
    }
    SUBCASE("inputs: push uncontrollable, the rest controllable") {
        Circuit c = gen_cycle_sched(2, 1, 1);
        ControlPartition p = partition_inputs(c);
        CHECK(p.uncontrollable.size() == 2);
        CHECK(p.controllable.size() == 2 * 2 + 1);
    }
    SUBCASE("cycle_sched_1_1_1 fits the 16-bit oracle budget") {
        Circuit c = gen_cycle_sched(1, 1, 1);
        CHECK(c.latches.size() + c.inputs.size() <= 16);
    }
}

TEST_CASE("washing-cycle monitors match the expression oracle") {
    std::mt19937_64 rng(123);
    for (unsigned n = 1; n <= 3; ++n) {
        for (unsigned d = 1; d <= 3; ++d) {
            for (unsigned t = 1; t <= n; ++t) {
                Circuit c = gen_cycle_sched(n, d, t);
                const std::size_t word_len = 2 * d + 3;
                const int words = 300;
                for (int trial = 0; trial < words; ++trial) {
                    test::WashingWord w;
                    std::vector<std::vector<bool>> trace;
                    for (std::size_t step = 0; step < word_len; ++step) {
                        std::vector<bool> push(n), fill(n), empty(n);
                        for (unsigned i = 0; i < n; ++i) {
                            push[i] = rng() & 1;
                            fill[i] = rng() & 1;
                            empty[i] = rng() & 1;
                        }
                        bool light = rng() & 1;
                        w.push.push_back(push);
                        w.fill.push_back(fill);
                        w.empty.push_back(empty);
                        w.light.push_back(light);
                        // input order: push_1..n, fill_1..n, empty_1..n, light
                        std::vector<bool> row;
                        row.insert(row.end(), push.begin(), push.end());
                        row.insert(row.end(), fill.begin(), fill.end());
                        row.insert(row.end(), empty.begin(), empty.end());
                        row.push_back(light);
                        trace.push_back(row);
                    }
                    SimulationResult sim = simulate(c, trace);
                    // the output at step T reports on the consumed prefix
                    // w[0..T-1]
                    for (std::size_t step = 0; step < word_len; ++step) {
                        bool expected =
                            step > 0 && test::washing_prefix_in_language(n, d, t, w, step);
                        CHECK(sim.outputs[step][0] == expected);
                    }
                }
            }
        }
    }
}

TEST_CASE("washing verdict matches the explicit oracle on the smallest instance") {
    Circuit c = gen_cycle_sched(1, 1, 1);
    ControlPartition p = partition_inputs(c);
    test::ExplicitGame oracle(c, p);
    BddManager mgr;
    SafetyGame g = build_game(mgr, c, p);
    CHECK(solve_classic(g).realizable == oracle.realizable());
}

TEST_CASE("matrix multiplication family") {
    SUBCASE("unit instance is realizable with a single-gate solution") {
        Circuit c = gen_mult_matrix(1, 1, 1);
        ControlPartition p = partition_inputs(c);
        test::ExplicitGame oracle(c, p);
        CHECK(oracle.realizable());
        BddManager mgr;
        SafetyGame g = build_game(mgr, c, p);
        GameResult r = solve_classic(g);
        REQUIRE(r.realizable);
        Solution sol = synthesize(c, p, g, r.winning_region);
        CHECK(sol.gate_count == 1);  // c = a & b is minimal
        CHECK(model_check(sol.circuit).status == Verdict::Status::verified);
    }
    SUBCASE("every generated instance is realizable with a verified solution") {
        for (auto [m, n, o] : {std::tuple<unsigned, unsigned, unsigned>{1, 2, 2},
                               {2, 2, 2},
                               {3, 3, 3},
                               {1, 3, 1}}) {
            Circuit c = gen_mult_matrix(m, n, o);
            ControlPartition p = partition_inputs(c);
            BddManager mgr;
            SafetyGame g = build_game(mgr, c, p);
            GameResult r = solve_classic(g);
            REQUIRE(r.realizable);
            Solution sol = synthesize(c, p, g, r.winning_region);
            CHECK(model_check(sol.circuit).status == Verdict::Status::verified);
        }
    }
    SUBCASE("gate count grows with the dimensions") {
        std::size_t g222 = gen_mult_matrix(2, 2, 2).ands.size();
        std::size_t g444 = gen_mult_matrix(4, 4, 4).ands.size();
        CHECK(g444 > 4 * g222);  // Theta(m*o*n) growth
    }
}

TEST_CASE("repeated multiplication family") {
    SUBCASE("initial parity row is safe for (1,2)") {
        // B = (1,0) initially: no constant row, so the first step cannot fail
        Circuit c = gen_mult_matrix_dyn(1, 2);
        ControlPartition p = partition_inputs(c);
        test::ExplicitGame oracle(c, p);
        // state 0 = before boot: simulate one step with arbitrary inputs and
        // check the error output is low at time 0
        test::ExplicitGame::Step st = oracle.step(0, 0, 0);
        CHECK(!st.error);
        CHECK(oracle.realizable());
    }
    SUBCASE("verdicts match the oracle") {
        for (auto [m, n] : {std::pair<unsigned, unsigned>{1, 2}, {2, 2}}) {
            Circuit c = gen_mult_matrix_dyn(m, n);
            ControlPartition p = partition_inputs(c);
            test::ExplicitGame oracle(c, p);
            BddManager mgr;
            SafetyGame g = build_game(mgr, c, p);
            CHECK(solve_classic(g).realizable == oracle.realizable());
        }
    }
    SUBCASE("boot latch adds one to the stored matrix") {
        CHECK(gen_mult_matrix_dyn(2, 2).latches.size() == 2 * 2 + 1);
        CHECK(gen_mult_matrix_dyn(3, 4).latches.size() == 3 * 4 + 1);
    }
    SUBCASE("odd n is rejected") {
        CHECK_THROWS(gen_mult_matrix_dyn(2, 3));
        CHECK_THROWS(gen_mult_matrix_dyn(2, 1));
    }
}

TEST_CASE("toy families") {
    SUBCASE("cnt1 is realizable by clearing at saturation") {
        Circuit c = gen_counter(1);
        ControlPartition p = partition_inputs(c);
        test::ExplicitGame oracle(c, p);
        CHECK(oracle.realizable());
        // clearing whenever the counter reads 1 never errs
        test::ExplicitGame::Step st = oracle.step(1, 1, 1);
        CHECK(!st.error);
        CHECK(st.next_state == 0);
        // not clearing at saturation errs
        CHECK(oracle.step(1, 0, 0).error);
    }
    SUBCASE("add1 solution is the xor") {
        Circuit c = gen_adder(1);
        ControlPartition p = partition_inputs(c);
        BddManager mgr;
        SafetyGame g = build_game(mgr, c, p);
        GameResult r = solve_classic(g);
        REQUIRE(r.realizable);
        std::vector<Bdd> fns = resolve_outputs(g, extract_strategy(g, r.winning_region));
        CHECK(fns[0] == (mgr.var(g.u_vars[0]) ^ mgr.var(g.u_vars[1])));
    }
    SUBCASE("counters are realizable for widths 2..8") {
        for (unsigned n = 2; n <= 8; ++n) {
            Circuit c = gen_counter(n);
            ControlPartition p = partition_inputs(c);
            BddManager mgr;
            SafetyGame g = build_game(mgr, c, p);
            GameResult r = solve_classic(g);
            CHECK(r.realizable);
            if (n <= 5) {
                Solution sol = synthesize(c, p, g, r.winning_region);
                CHECK(model_check(sol.circuit).status == Verdict::Status::verified);
            }
        }
    }
    SUBCASE("file names") {
        CHECK(cycle_sched_name(2, 1, 2) == "cycle_sched_2_1_2.aag");
        CHECK(mult_matrix_name(1, 2, 3) == "mult_bool_matrix_1_2_3.aag");
        CHECK(mult_matrix_dyn_name(2, 4) == "mult_bool_matrix_dyn_2_4.aag");
        CHECK(counter_name(8) == "cnt8.aag");
        CHECK(adder_name(2) == "add2.aag");
    }
}

TEST_CASE("classification aggregation") {
    SUBCASE("all realizable") {
        std::vector<ClassifyInput> runs{{true, true, 0.5, 20u},
                                        {true, true, 0.12, 17u},
                                        {true, true, 3.0, std::nullopt}};
        MetaInfo m = classify(runs, "label");
        CHECK(m.status == MetaInfo::Status::realizable);
        REQUIRE(m.solved_by.has_value());
        CHECK(m.solved_by->numerator == 3);
        CHECK(m.solved_by->denominator == 3);
        CHECK(m.solved_in->seconds == doctest::Approx(0.12));
        CHECK(m.ref_size == 17u);
    }
    SUBCASE("zero finished runs") {
        std::vector<ClassifyInput> runs{{false, false, 0, std::nullopt},
                                        {false, false, 0, std::nullopt}};
        MetaInfo m = classify(runs, "label");
        CHECK(m.status == MetaInfo::Status::unknown);
        CHECK(!m.solved_in.has_value());
        std::vector<std::string> lines = write_meta(m);
        bool has_zero_time = false;
        for (const std::string& l : lines) has_zero_time |= l == "SOLVED_IN : 0";
        CHECK(has_zero_time);
    }
    SUBCASE("conflicting verdicts are fatal") {
        std::vector<ClassifyInput> runs{{true, true, 0.5, std::nullopt},
                                        {true, false, 0.5, std::nullopt}};
        CHECK_THROWS(classify(runs, "label"));
    }
}
