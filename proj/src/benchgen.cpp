#include "aigsynt/benchgen.hpp"

#include <algorithm>
#include <stdexcept>

namespace aigsynt {

namespace {

std::vector<std::string> fresh_meta_comments() {
    return write_meta(MetaInfo{});
}

// Appends a linear chain for true* . P_1 ... P_k hanging off the shared
// initial state; returns the index of the accepting final state.
std::size_t add_chain(SymbolicNfa& nfa, std::size_t q0, const std::vector<Literal>& preds) {
    std::size_t prev = q0;
    std::size_t state = 0;
    for (Literal p : preds) {
        state = nfa.add_state();
        nfa.transitions.push_back({prev, p, state});
        prev = state;
    }
    nfa.accepting.push_back(state);
    return state;
}

}  // namespace

WashingSpec build_washing_spec(unsigned n, unsigned d, unsigned t) {
    if (n < 1 || d < 1 || t < 1 || t > n)
        throw std::invalid_argument("gen_cycle_sched requires n >= 1, d >= 1, 1 <= t <= n");
    const unsigned k = d;  // emptying delay, fixed equal to the reaction delay

    WashingSpec spec;
    AigBuilder& b = spec.builder;
    for (unsigned i = 1; i <= n; ++i) spec.push.push_back(b.add_input("push_" + std::to_string(i)));
    for (unsigned i = 1; i <= n; ++i)
        spec.fill.push_back(b.add_input("controllable_fill_" + std::to_string(i)));
    for (unsigned i = 1; i <= n; ++i)
        spec.empty.push_back(b.add_input("controllable_empty_" + std::to_string(i)));
    spec.light = b.add_input("controllable_light");

    SymbolicNfa& nfa = spec.nfa;
    std::size_t q0 = nfa.add_state();
    nfa.initial.push_back(q0);
    nfa.transitions.push_back({q0, lit_true, q0});

    for (unsigned i = 0; i < n; ++i) {
        // A_i: push_i followed by d steps without fill_i
        std::vector<Literal> a{spec.push[i]};
        a.insert(a.end(), d, !spec.fill[i]);
        add_chain(nfa, q0, a);
        // B_i: d steps without push_i, then fill_i
        std::vector<Literal> bb(d, !spec.push[i]);
        bb.push_back(spec.fill[i]);
        add_chain(nfa, q0, bb);
        // C_i: fill_i, k arbitrary steps, then no empty_i
        std::vector<Literal> cc{spec.fill[i]};
        cc.insert(cc.end(), k, lit_true);
        cc.push_back(!spec.empty[i]);
        add_chain(nfa, q0, cc);
        // C'_i: fill_i, then empty_i within the first k - 1 steps
        std::size_t prev = nfa.add_state();
        nfa.transitions.push_back({q0, spec.fill[i], prev});
        std::size_t fin = nfa.add_state();
        nfa.accepting.push_back(fin);
        nfa.transitions.push_back({prev, spec.empty[i], fin});
        for (unsigned j = 1; j < k; ++j) {
            std::size_t next = nfa.add_state();
            nfa.transitions.push_back({prev, lit_true, next});
            nfa.transitions.push_back({next, spec.empty[i], fin});
            prev = next;
        }
    }

    // D: the light disagrees with "some tank is being filled"
    Literal any_fill = b.lor_all(spec.fill);
    add_chain(nfa, q0, {b.lxor(spec.light, any_fill)});

    // E: all tanks of a shared pipe fill at once; pipes are consecutive
    // blocks of t tanks, single-tank pipes contribute nothing
    std::vector<Literal> pipe_clashes;
    for (unsigned start = 0; start < n; start += t) {
        unsigned end = std::min(start + t, n);
        if (end - start < 2) continue;
        std::vector<Literal> members(spec.fill.begin() + start, spec.fill.begin() + end);
        pipe_clashes.push_back(b.land_all(members));
    }
    if (!pipe_clashes.empty()) add_chain(nfa, q0, {b.lor_all(pipe_clashes)});

    return spec;
}

namespace {

// Encodes the automaton: one latch per state, one boot latch. A latch is on
// iff some run on the consumed prefix ends in its state; the error output is
// the disjunction of accepting-state occupancies.
Circuit encode_nfa(WashingSpec&& spec, std::vector<std::string> comments) {
    AigBuilder& b = spec.builder;
    const SymbolicNfa& nfa = spec.nfa;

    Literal booted = b.add_latch("booted");
    std::vector<Literal> state_latch;
    state_latch.reserve(nfa.num_states);
    for (std::size_t q = 0; q < nfa.num_states; ++q)
        state_latch.push_back(b.add_latch("q" + std::to_string(q)));

    std::vector<bool> is_initial(nfa.num_states, false);
    for (std::size_t q : nfa.initial) is_initial[q] = true;
    auto occupancy = [&](std::size_t q) {
        return is_initial[q] ? b.lor(state_latch[q], !booted) : state_latch[q];
    };

    std::vector<std::vector<Literal>> incoming(nfa.num_states);
    for (const auto& tr : nfa.transitions)
        incoming[tr.to].push_back(b.land(occupancy(tr.from), tr.predicate));

    b.set_next(booted, lit_true);
    for (std::size_t q = 0; q < nfa.num_states; ++q)
        b.set_next(state_latch[q], b.lor_all(incoming[q]));

    std::vector<Literal> accepting_occ;
    for (std::size_t q : nfa.accepting) accepting_occ.push_back(occupancy(q));
    b.add_output(b.lor_all(accepting_occ));

    return b.build(std::move(comments));
}

}  // namespace

Circuit gen_cycle_sched(unsigned n, unsigned d, unsigned t) {
    return encode_nfa(build_washing_spec(n, d, t), fresh_meta_comments());
}

Circuit gen_mult_matrix(unsigned m, unsigned n, unsigned o) {
    if (m < 1 || n < 1 || o < 1) throw std::invalid_argument("matrix dimensions must be positive");
    AigBuilder b;
    std::vector<std::vector<Literal>> a(m, std::vector<Literal>(n));
    std::vector<std::vector<Literal>> bm(n, std::vector<Literal>(o));
    std::vector<std::vector<Literal>> cm(m, std::vector<Literal>(o));
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < n; ++j)
            a[i][j] = b.add_input("a_" + std::to_string(i) + "_" + std::to_string(j));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < o; ++j)
            bm[i][j] = b.add_input("b_" + std::to_string(i) + "_" + std::to_string(j));
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < o; ++j)
            cm[i][j] = b.add_input("controllable_c_" + std::to_string(i) + "_" + std::to_string(j));

    std::vector<Literal> mismatches;
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < o; ++j) {
            std::vector<Literal> products;
            for (unsigned kk = 0; kk < n; ++kk) products.push_back(b.land(a[i][kk], bm[kk][j]));
            mismatches.push_back(b.lxor(cm[i][j], b.lor_all(products)));
        }
    b.add_output(b.lor_all(mismatches));
    return b.build(fresh_meta_comments());
}

Circuit gen_mult_matrix_dyn(unsigned m, unsigned n) {
    if (m < 1) throw std::invalid_argument("m must be positive");
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("n must be even and at least 2");
    AigBuilder b;
    // A is read from the inputs each step; its first n/2 columns are
    // controllable.
    std::vector<std::vector<Literal>> a(n, std::vector<Literal>(n));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            std::string base = "a_" + std::to_string(i) + "_" + std::to_string(j);
            a[i][j] = b.add_input(j < n / 2 ? std::string(kControllablePrefix) + base : base);
        }

    Literal booted = b.add_latch("booted");
    std::vector<std::vector<Literal>> stored(m, std::vector<Literal>(n));
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < n; ++j)
            stored[i][j] = b.add_latch("b_" + std::to_string(i) + "_" + std::to_string(j));

    // Effective entry: the parity pattern before the first step, the stored
    // value afterwards. Zero-based parity: B_ij = 1 iff i + j is even.
    std::vector<std::vector<Literal>> eff(m, std::vector<Literal>(n));
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < n; ++j) {
            bool parity_one = ((i + j) % 2 == 0);
            eff[i][j] = parity_one ? b.lor(b.land(booted, stored[i][j]), !booted)
                                   : b.land(booted, stored[i][j]);
        }

    b.set_next(booted, lit_true);
    // B' = B * A: each row evolves independently through A.
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < n; ++j) {
            std::vector<Literal> terms;
            for (unsigned kk = 0; kk < n; ++kk) terms.push_back(b.land(eff[i][kk], a[kk][j]));
            b.set_next(stored[i][j], b.lor_all(terms));
        }

    // Error: some row of the current B is constant.
    std::vector<Literal> row_const;
    for (unsigned i = 0; i < m; ++i) {
        row_const.push_back(b.land_all(eff[i]));
        std::vector<Literal> negs;
        for (unsigned j = 0; j < n; ++j) negs.push_back(!eff[i][j]);
        row_const.push_back(b.land_all(negs));
    }
    b.add_output(b.lor_all(row_const));
    return b.build(fresh_meta_comments());
}

Circuit gen_counter(unsigned n) {
    if (n < 1) throw std::invalid_argument("counter width must be positive");
    AigBuilder b;
    Literal tick = b.add_input("tick");
    Literal clear = b.add_input("controllable_clear");
    std::vector<Literal> bits;
    for (unsigned i = 0; i < n; ++i) bits.push_back(b.add_latch("c" + std::to_string(i)));

    Literal carry = tick;
    for (unsigned i = 0; i < n; ++i) {
        Literal sum = b.lxor(bits[i], carry);
        carry = b.land(bits[i], carry);
        b.set_next(bits[i], b.land(!clear, sum));
    }
    b.add_output(b.land(b.land_all(bits), !clear));
    return b.build(fresh_meta_comments());
}

Circuit gen_adder(unsigned n) {
    if (n < 1) throw std::invalid_argument("adder width must be positive");
    AigBuilder b;
    std::vector<Literal> a, bb, s;
    for (unsigned i = 0; i < n; ++i) a.push_back(b.add_input("a" + std::to_string(i)));
    for (unsigned i = 0; i < n; ++i) bb.push_back(b.add_input("b" + std::to_string(i)));
    for (unsigned i = 0; i < n; ++i) s.push_back(b.add_input("controllable_s" + std::to_string(i)));

    std::vector<Literal> wrong;
    Literal carry = lit_false;
    for (unsigned i = 0; i < n; ++i) {
        Literal sum = b.lxor(b.lxor(a[i], bb[i]), carry);
        carry = b.lor(b.land(a[i], bb[i]), b.land(carry, b.lor(a[i], bb[i])));
        wrong.push_back(b.lxor(s[i], sum));
    }
    b.add_output(b.lor_all(wrong));
    return b.build(fresh_meta_comments());
}

std::string cycle_sched_name(unsigned n, unsigned d, unsigned t) {
    return "cycle_sched_" + std::to_string(n) + "_" + std::to_string(d) + "_" + std::to_string(t) +
           ".aag";
}
std::string mult_matrix_name(unsigned m, unsigned n, unsigned o) {
    return "mult_bool_matrix_" + std::to_string(m) + "_" + std::to_string(n) + "_" +
           std::to_string(o) + ".aag";
}
std::string mult_matrix_dyn_name(unsigned m, unsigned n) {
    return "mult_bool_matrix_dyn_" + std::to_string(m) + "_" + std::to_string(n) + ".aag";
}
std::string counter_name(unsigned n) { return "cnt" + std::to_string(n) + ".aag"; }
std::string adder_name(unsigned n) { return "add" + std::to_string(n) + ".aag"; }

MetaInfo classify(const std::vector<ClassifyInput>& runs, const std::string& experiment_label) {
    MetaInfo m;
    if (runs.empty()) return m;
    unsigned finished = 0;
    bool any_real = false, any_unreal = false;
    double best_time = 0.0;
    std::optional<unsigned> best_size;
    for (const ClassifyInput& r : runs) {
        if (!r.finished) continue;
        ++finished;
        if (r.realizable)
            any_real = true;
        else
            any_unreal = true;
        if (finished == 1 || r.seconds < best_time) best_time = r.seconds;
        if (r.verified_size && (!best_size || *r.verified_size < *best_size))
            best_size = r.verified_size;
    }
    if (any_real && any_unreal)
        throw std::logic_error("classify: conflicting verdicts across runs (solver bug)");
    if (finished > 0)
        m.status = any_real ? MetaInfo::Status::realizable : MetaInfo::Status::unrealizable;
    m.solved_by = MetaInfo::SolvedBy{finished, static_cast<unsigned>(runs.size()), experiment_label};
    if (finished > 0 && best_time > 0)
        m.solved_in = MetaInfo::SolvedIn{best_time, experiment_label};
    m.ref_size = best_size;
    return m;
}

}  // namespace aigsynt
