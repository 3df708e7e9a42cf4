#include "aigsynt/synthesis.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "aigsynt/aig_builder.hpp"

namespace aigsynt {

StrategyRelation extract_strategy(const SafetyGame& g, const Bdd& winning_region) {
    Bdd moved = winning_region.compose(g.transition_substitution());
    Bdd lambda = winning_region & !g.error & moved;
    // Completeness on W: from every winning state, any environment move
    // leaves at least one allowed system response.
    Bdd ok = lambda.exists(g.c_cube).forall(g.u_cube);
    if (!winning_region.leq(ok))
        throw std::invalid_argument("extract_strategy: region is not a stable winning region");
    return StrategyRelation{lambda};
}

std::vector<Bdd> resolve_outputs(const SafetyGame& g, const StrategyRelation& rel) {
    std::vector<Bdd> functions;
    functions.reserve(g.c_vars.size());
    Bdd lambda = rel.lambda;
    for (std::size_t i = 0; i < g.c_vars.size(); ++i) {
        unsigned v = g.c_vars[i];
        std::vector<unsigned> rest(g.c_vars.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                   g.c_vars.end());
        Bdd rest_cube = g.mgr->cube_positive(rest);
        Bdd pos = lambda.cofactor(v, true).exists(rest_cube);
        Bdd neg = lambda.cofactor(v, false).exists(rest_cube);
        if ((pos | neg).is_zero() && !lambda.is_zero())
            throw std::logic_error("resolve_outputs: empty move set");
        Bdd fn = pos & !neg;  // must-one; don't-cares resolve to 0
        std::pair<unsigned, Bdd> sub{v, fn};
        lambda = lambda.compose(std::span<const std::pair<unsigned, Bdd>>(&sub, 1));
        functions.push_back(std::move(fn));
    }
    return functions;
}

namespace {

// Multiplexer decomposition of a BDD into AND-inverter gates with structural
// hashing across shared nodes.
class BddToAig {
public:
    BddToAig(AigBuilder& builder, const std::vector<std::pair<unsigned, Literal>>& var_lits)
        : builder_(builder) {
        for (const auto& [v, lit] : var_lits) lit_of_var_[v] = lit;
    }

    Literal emit(const Bdd& f) {
        if (f.is_zero()) return lit_false;
        if (f.is_one()) return lit_true;
        if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second.second;
        unsigned top = f.top_var();
        auto it = lit_of_var_.find(top);
        if (it == lit_of_var_.end())
            throw std::logic_error("bdd_to_aig: function depends on an unmapped variable");
        Literal hi_lit = emit(f.cofactor(top, true));
        Literal lo_lit = emit(f.cofactor(top, false));
        Literal out = builder_.lite(it->second, hi_lit, lo_lit);
        // The stored handle keeps the node alive so its id stays unique.
        memo_.emplace(f.id(), std::make_pair(f, out));
        return out;
    }

private:
    AigBuilder& builder_;
    std::unordered_map<unsigned, Literal> lit_of_var_;
    std::unordered_map<std::size_t, std::pair<Bdd, Literal>> memo_;
};

}  // namespace

Solution bdd_to_aig(const Circuit& spec, const ControlPartition& p, const SafetyGame& g,
                    const std::vector<Bdd>& functions) {
    if (functions.size() != p.controllable.size())
        throw std::invalid_argument("bdd_to_aig: one function per controllable input required");

    AigBuilder builder;
    std::vector<Literal> new_lit_of_var(spec.max_var + 1, lit_false);

    std::vector<std::pair<unsigned, Literal>> var_lits;
    for (std::size_t pos : p.uncontrollable) {
        const std::string* name = spec.symbol(SymbolKind::input, pos);
        Literal l = builder.add_input(name ? *name : "in" + std::to_string(pos));
        new_lit_of_var[spec.inputs[pos].var()] = l;
        var_lits.emplace_back(g.input_vars[pos], l);
    }
    for (std::size_t i = 0; i < spec.latches.size(); ++i) {
        const std::string* name = spec.symbol(SymbolKind::latch, i);
        Literal l = builder.add_latch(name ? *name : "latch" + std::to_string(i));
        new_lit_of_var[spec.latches[i].state.var()] = l;
        var_lits.emplace_back(g.latch_vars[i], l);
    }

    std::vector<std::string> comments = spec.comments;
    std::vector<std::pair<std::string, Literal>> drivers;
    BddToAig emitter(builder, var_lits);
    for (std::size_t i = 0; i < p.controllable.size(); ++i) {
        std::size_t pos = p.controllable[i];
        Literal fn = emitter.emit(functions[i]);
        new_lit_of_var[spec.inputs[pos].var()] = fn;
        const std::string* name = spec.symbol(SymbolKind::input, pos);
        drivers.emplace_back(name ? *name : "input" + std::to_string(pos), fn);
    }

    auto map_lit = [&](Literal l) {
        if (l.is_constant()) return l;
        Literal base = new_lit_of_var[l.var()];
        return l.negated() ? !base : base;
    };
    for (const AndGate& gate : spec.ands)
        new_lit_of_var[gate.lhs.var()] = builder.land(map_lit(gate.rhs0), map_lit(gate.rhs1));
    for (std::size_t i = 0; i < spec.latches.size(); ++i)
        builder.set_next(new_lit_of_var[spec.latches[i].state.var()], map_lit(spec.latches[i].next));
    for (std::size_t i = 0; i < spec.outputs.size(); ++i) {
        const std::string* name = spec.symbol(SymbolKind::output, i);
        builder.add_output(map_lit(spec.outputs[i]), name ? *name : "");
    }

    Solution s;
    s.circuit = builder.build(std::move(comments));
    s.gate_count = s.circuit.ands.size();
    s.drivers = std::move(drivers);
    return s;
}

Solution minimize(const Solution& sol) {
    const Circuit& c = sol.circuit;

    // Cone of influence from outputs, latch next-state functions and the
    // synthesized controllable drivers (the controller must stay observable
    // even when the monitor cone folds to a constant).
    std::vector<int> gate_of_var(c.max_var + 1, -1);
    for (std::size_t i = 0; i < c.ands.size(); ++i) gate_of_var[c.ands[i].lhs.var()] = static_cast<int>(i);
    std::vector<bool> used(c.max_var + 1, false);
    std::vector<unsigned> todo;
    auto mark = [&](Literal l) {
        if (!l.is_constant() && !used[l.var()]) {
            used[l.var()] = true;
            todo.push_back(l.var());
        }
    };
    for (Literal o : c.outputs) mark(o);
    for (const Latch& l : c.latches) mark(l.next);
    for (const auto& [name, lit] : sol.drivers) mark(lit);
    while (!todo.empty()) {
        unsigned v = todo.back();
        todo.pop_back();
        if (gate_of_var[v] >= 0) {
            mark(c.ands[gate_of_var[v]].rhs0);
            mark(c.ands[gate_of_var[v]].rhs1);
        }
    }

    AigBuilder builder;
    std::vector<Literal> new_lit_of_var(c.max_var + 1, lit_false);
    for (std::size_t i = 0; i < c.inputs.size(); ++i) {
        const std::string* name = c.symbol(SymbolKind::input, i);
        new_lit_of_var[c.inputs[i].var()] = builder.add_input(name ? *name : "");
    }
    for (std::size_t i = 0; i < c.latches.size(); ++i) {
        const std::string* name = c.symbol(SymbolKind::latch, i);
        new_lit_of_var[c.latches[i].state.var()] = builder.add_latch(name ? *name : "");
    }
    auto map_lit = [&](Literal l) {
        if (l.is_constant()) return l;
        Literal base = new_lit_of_var[l.var()];
        return l.negated() ? !base : base;
    };
    for (const AndGate& g : c.ands) {
        if (!used[g.lhs.var()]) continue;
        new_lit_of_var[g.lhs.var()] = builder.land(map_lit(g.rhs0), map_lit(g.rhs1));
    }
    for (std::size_t i = 0; i < c.latches.size(); ++i)
        builder.set_next(new_lit_of_var[c.latches[i].state.var()], map_lit(c.latches[i].next));
    for (std::size_t i = 0; i < c.outputs.size(); ++i) {
        const std::string* name = c.symbol(SymbolKind::output, i);
        builder.add_output(map_lit(c.outputs[i]), name ? *name : "");
    }

    Solution out;
    out.circuit = builder.build(c.comments);
    out.gate_count = out.circuit.ands.size();
    for (const auto& [name, lit] : sol.drivers) out.drivers.emplace_back(name, map_lit(lit));
    if (out.gate_count > sol.gate_count) return sol;  // never grow
    return out;
}

Solution synthesize(const Circuit& spec, const ControlPartition& p, const SafetyGame& g,
                    const Bdd& winning_region) {
    StrategyRelation rel = extract_strategy(g, winning_region);
    std::vector<Bdd> fns = resolve_outputs(g, rel);
    Solution sol = minimize(bdd_to_aig(spec, p, g, fns));
    for (const auto& [name, lit] : sol.drivers)
        sol.circuit.comments.push_back("synthesized " + name + " -> literal " +
                                       std::to_string(lit.value));
    return sol;
}

}  // namespace aigsynt
