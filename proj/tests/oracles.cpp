#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace aigsynt::test {

TruthTable TruthTable::constant(unsigned nvars, bool value) {
    TruthTable t;
    t.nvars = nvars;
    t.bits.assign(std::size_t(1) << nvars, value);
    return t;
}

TruthTable TruthTable::projection(unsigned nvars, unsigned pos) {
    TruthTable t = constant(nvars, false);
    for (std::uint32_t a = 0; a < t.size(); ++a) t.bits[a] = (a >> pos) & 1u;
    return t;
}

TruthTable TruthTable::random(unsigned nvars, std::mt19937_64& rng) {
    TruthTable t = constant(nvars, false);
    for (std::uint32_t a = 0; a < t.size(); ++a) t.bits[a] = rng() & 1u;
    return t;
}

TruthTable TruthTable::operator&(const TruthTable& o) const {
    TruthTable t = *this;
    for (std::uint32_t a = 0; a < size(); ++a) t.bits[a] = bits[a] && o.bits[a];
    return t;
}

TruthTable TruthTable::operator|(const TruthTable& o) const {
    TruthTable t = *this;
    for (std::uint32_t a = 0; a < size(); ++a) t.bits[a] = bits[a] || o.bits[a];
    return t;
}

TruthTable TruthTable::operator^(const TruthTable& o) const {
    TruthTable t = *this;
    for (std::uint32_t a = 0; a < size(); ++a) t.bits[a] = bits[a] != o.bits[a];
    return t;
}

TruthTable TruthTable::operator!() const {
    TruthTable t = *this;
    for (std::uint32_t a = 0; a < size(); ++a) t.bits[a] = !bits[a];
    return t;
}

TruthTable TruthTable::exists(const std::vector<unsigned>& positions) const {
    TruthTable t = *this;
    for (unsigned p : positions) {
        TruthTable next = t;
        for (std::uint32_t a = 0; a < size(); ++a)
            next.bits[a] = t.bits[a & ~(1u << p)] || t.bits[a | (1u << p)];
        t = next;
    }
    return t;
}

TruthTable TruthTable::forall(const std::vector<unsigned>& positions) const {
    return !(!*this).exists(positions);
}

TruthTable TruthTable::compose(const std::map<unsigned, TruthTable>& subst) const {
    TruthTable t = constant(nvars, false);
    for (std::uint32_t a = 0; a < size(); ++a) {
        std::uint32_t mapped = a;
        for (const auto& [pos, fn] : subst) {
            if (fn.at(a))
                mapped |= (1u << pos);
            else
                mapped &= ~(1u << pos);
        }
        t.bits[a] = bits[mapped];
    }
    return t;
}

Bdd to_bdd(BddManager& mgr, const TruthTable& tt, const std::vector<unsigned>& var_ids) {
    if (var_ids.size() != tt.nvars) throw std::invalid_argument("to_bdd: variable count mismatch");
    // Shannon expansion on the highest position first.
    auto build = [&](auto&& self, std::uint32_t offset, unsigned k) -> Bdd {
        if (k == 0) return tt.bits[offset] ? mgr.one() : mgr.zero();
        Bdd low = self(self, offset, k - 1);
        Bdd high = self(self, offset + (std::uint32_t(1) << (k - 1)), k - 1);
        return mgr.var(var_ids[k - 1]).ite(high, low);
    };
    return build(build, 0, tt.nvars);
}

bool agrees(const Bdd& f, const TruthTable& tt, const std::vector<unsigned>& var_ids,
            unsigned num_manager_vars) {
    std::vector<bool> assignment(num_manager_vars, false);
    for (std::uint32_t a = 0; a < tt.size(); ++a) {
        for (unsigned i = 0; i < tt.nvars; ++i) assignment[var_ids[i]] = (a >> i) & 1u;
        if (f.eval(assignment) != tt.at(a)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

ExplicitGame::ExplicitGame(const Circuit& c, const ControlPartition& p) : circuit_(c), part_(p) {
    if (c.latches.size() > 20) throw std::invalid_argument("explicit oracle: too many latches");
    if (c.outputs.size() != 1) throw std::invalid_argument("explicit oracle: single output required");
}

ExplicitGame::Step ExplicitGame::step(std::uint64_t state, std::uint32_t u_bits,
                                      std::uint32_t c_bits) const {
    const Circuit& c = circuit_;
    std::vector<bool> value(c.max_var + 1, false);
    for (std::size_t i = 0; i < part_.uncontrollable.size(); ++i)
        value[c.inputs[part_.uncontrollable[i]].var()] = (u_bits >> i) & 1u;
    for (std::size_t i = 0; i < part_.controllable.size(); ++i)
        value[c.inputs[part_.controllable[i]].var()] = (c_bits >> i) & 1u;
    for (std::size_t i = 0; i < c.latches.size(); ++i)
        value[c.latches[i].state.var()] = (state >> i) & 1u;
    auto lit_val = [&](Literal l) {
        bool v = l.is_constant() ? false : value[l.var()];
        return l.negated() ? !v : v;
    };
    for (const AndGate& g : c.ands) value[g.lhs.var()] = lit_val(g.rhs0) && lit_val(g.rhs1);
    Step s{0, lit_val(c.outputs[0])};
    for (std::size_t i = 0; i < c.latches.size(); ++i)
        if (lit_val(c.latches[i].next)) s.next_state |= (std::uint64_t(1) << i);
    return s;
}

std::vector<bool> ExplicitGame::attractor() const {
    const std::uint64_t num_states = std::uint64_t(1) << num_latches();
    const std::uint32_t num_u_vals = std::uint32_t(1) << num_u();
    const std::uint32_t num_c_vals = std::uint32_t(1) << num_c();
    std::vector<bool> bad(num_states, false);

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::uint64_t s = 0; s < num_states; ++s) {
            if (bad[s]) continue;
            bool env_wins = false;
            for (std::uint32_t u = 0; u < num_u_vals && !env_wins; ++u) {
                bool all_c_bad = true;
                for (std::uint32_t cc = 0; cc < num_c_vals && all_c_bad; ++cc) {
                    Step st = step(s, u, cc);
                    if (!st.error && !bad[st.next_state]) all_c_bad = false;
                }
                env_wins = all_c_bad;
            }
            if (env_wins) {
                bad[s] = true;
                changed = true;
            }
        }
    }
    return bad;
}

bool ExplicitGame::realizable() const { return !attractor()[0]; }

// ---------------------------------------------------------------------------

bool washing_prefix_in_language(unsigned n, unsigned d, unsigned t, const WashingWord& w,
                                std::size_t prefix_len) {
    const unsigned k = d;
    if (prefix_len == 0 || prefix_len > w.length()) return false;
    const std::size_t last = prefix_len - 1;

    for (unsigned i = 0; i < n; ++i) {
        // A_i = true* {push_i} {!fill_i}^d
        if (prefix_len >= d + 1) {
            bool match = w.push[last - d][i];
            for (std::size_t j = last - d + 1; match && j <= last; ++j) match = !w.fill[j][i];
            if (match) return true;
        }
        // B_i = true* {!push_i}^d {fill_i}
        if (prefix_len >= d + 1 && w.fill[last][i]) {
            bool match = true;
            for (std::size_t j = last - d; match && j + 1 <= last; ++j) match = !w.push[j][i];
            if (match) return true;
        }
        // C_i = true* {fill_i} true^k {!empty_i}
        if (prefix_len >= k + 2 && !w.empty[last][i] && w.fill[last - k - 1][i]) return true;
        // C'_i = true* {fill_i} (true|eps)^{k-1} {empty_i}
        if (w.empty[last][i])
            for (unsigned r = 0; r < k; ++r)
                if (prefix_len >= r + 2 && w.fill[last - r - 1][i]) return true;
    }

    // D: light disagrees with "some tank being filled"
    bool any_fill = false;
    for (unsigned i = 0; i < n; ++i) any_fill |= w.fill[last][i];
    if (w.light[last] != any_fill) return true;

    // E: all tanks of a multi-tank pipe fill at once
    for (unsigned start = 0; start < n; start += t) {
        unsigned end = std::min(start + t, n);
        if (end - start < 2) continue;
        bool all = true;
        for (unsigned i = start; i < end; ++i) all &= w.fill[last][i];
        if (all) return true;
    }
    return false;
}

}  // namespace aigsynt::test
