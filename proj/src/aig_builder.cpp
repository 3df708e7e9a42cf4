#include "aigsynt/aig_builder.hpp"

#include <algorithm>
#include <stdexcept>

namespace aigsynt {

Literal AigBuilder::add_input(std::string name) {
    Literal l = Literal::of_var(next_var_++);
    inputs_.push_back(l);
    input_names_.push_back(std::move(name));
    return l;
}

Literal AigBuilder::add_latch(std::string name) {
    Literal l = Literal::of_var(next_var_++);
    latches_.push_back({l, lit_false});
    latch_names_.push_back(std::move(name));
    next_set_.push_back(false);
    return l;
}

void AigBuilder::set_next(Literal state, Literal next) {
    for (std::size_t i = 0; i < latches_.size(); ++i) {
        if (latches_[i].state == state) {
            latches_[i].next = next;
            next_set_[i] = true;
            return;
        }
    }
    throw std::invalid_argument("set_next: literal is not a latch");
}

void AigBuilder::add_output(Literal f, std::string name) {
    outputs_.push_back(f);
    output_names_.push_back(std::move(name));
}

Literal AigBuilder::land(Literal a, Literal b) {
    if (a == lit_false || b == lit_false) return lit_false;
    if (a == lit_true) return b;
    if (b == lit_true) return a;
    if (a == b) return a;
    if (a == !b) return lit_false;
    if (b < a) std::swap(a, b);
    auto key = std::make_pair(a.value, b.value);
    if (auto it = gate_hash_.find(key); it != gate_hash_.end()) return it->second;
    Literal lhs = Literal::of_var(next_var_++);
    ands_.push_back({lhs, a, b});
    gate_hash_.emplace(key, lhs);
    return lhs;
}

Literal AigBuilder::lxor(Literal a, Literal b) {
    return !land(!land(a, !b), !land(!a, b));
}

Literal AigBuilder::lite(Literal cond, Literal then_lit, Literal else_lit) {
    if (then_lit == else_lit) return then_lit;
    return lor(land(cond, then_lit), land(!cond, else_lit));
}

Literal AigBuilder::land_all(std::span<const Literal> lits) {
    // Balanced reduction keeps gate depth logarithmic.
    std::vector<Literal> cur(lits.begin(), lits.end());
    if (cur.empty()) return lit_true;
    while (cur.size() > 1) {
        std::vector<Literal> next;
        for (std::size_t i = 0; i + 1 < cur.size(); i += 2) next.push_back(land(cur[i], cur[i + 1]));
        if (cur.size() % 2) next.push_back(cur.back());
        cur = std::move(next);
    }
    return cur[0];
}

Literal AigBuilder::lor_all(std::span<const Literal> lits) {
    std::vector<Literal> neg;
    neg.reserve(lits.size());
    for (Literal l : lits) neg.push_back(!l);
    return !land_all(neg);
}

Circuit AigBuilder::build(std::vector<std::string> comments) const {
    for (bool set : next_set_)
        if (!set) throw std::logic_error("latch without a next-state function");
    Circuit c;
    c.max_var = next_var_ - 1;
    c.inputs = inputs_;
    c.latches = latches_;
    c.outputs = outputs_;
    c.ands = ands_;
    c.comments = std::move(comments);
    for (std::size_t i = 0; i < input_names_.size(); ++i)
        if (!input_names_[i].empty()) c.set_symbol(SymbolKind::input, i, input_names_[i]);
    for (std::size_t i = 0; i < latch_names_.size(); ++i)
        if (!latch_names_[i].empty()) c.set_symbol(SymbolKind::latch, i, latch_names_[i]);
    for (std::size_t i = 0; i < output_names_.size(); ++i)
        if (!output_names_[i].empty()) c.set_symbol(SymbolKind::output, i, output_names_[i]);
    c.validate();
    return c;
}

}  // namespace aigsynt
