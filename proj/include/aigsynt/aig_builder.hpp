#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "aigsynt/aiger.hpp"

namespace aigsynt {

// Incremental AIG construction with constant folding and structural hashing.
// Variables are numbered in creation order, so the AIGER dominance invariant
// holds by construction.
class AigBuilder {
public:
    Literal add_input(std::string name);
    Literal add_latch(std::string name);
    void set_next(Literal state, Literal next);
    void add_output(Literal f, std::string name = "");

    Literal land(Literal a, Literal b);
    Literal lor(Literal a, Literal b) { return !land(!a, !b); }
    Literal lxor(Literal a, Literal b);
    Literal lite(Literal cond, Literal then_lit, Literal else_lit);
    Literal land_all(std::span<const Literal> lits);
    Literal lor_all(std::span<const Literal> lits);

    std::size_t num_ands() const { return ands_.size(); }

    Circuit build(std::vector<std::string> comments = {}) const;

private:
    struct PairHash {
        std::size_t operator()(const std::pair<unsigned, unsigned>& p) const {
            return p.first * 0x9e3779b97f4a7c15ull ^ p.second;
        }
    };

    unsigned next_var_ = 1;
    std::vector<Literal> inputs_;
    std::vector<std::string> input_names_;
    std::vector<Latch> latches_;
    std::vector<std::string> latch_names_;
    std::vector<bool> next_set_;
    std::vector<Literal> outputs_;
    std::vector<std::string> output_names_;
    std::vector<AndGate> ands_;
    std::unordered_map<std::pair<unsigned, unsigned>, Literal, PairHash> gate_hash_;
};

}  // namespace aigsynt
