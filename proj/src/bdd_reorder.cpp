#include <algorithm>
#include <cassert>
#include <numeric>
#include <vector>

#include "aigsynt/bdd.hpp"

namespace aigsynt {

// Swaps the variables at levels lvl and lvl+1. Nodes are rewritten in place,
// so edges held by handles and by nodes above stay valid. Returns the live
// node count after the swap.
std::size_t BddManager::swap_levels(std::uint32_t lvl) {
    assert(lvl + 1 < tables_.size());
    Subtable& ti = tables_[lvl];
    Subtable& tj = tables_[lvl + 1];

    std::vector<std::uint32_t> upper;
    upper.reserve(ti.count);
    for (std::uint32_t head : ti.buckets)
        for (std::uint32_t idx = head; idx != kNil; idx = nodes_[idx].next) upper.push_back(idx);

    std::vector<std::pair<std::uint32_t, std::uint32_t>> lower;  // (index, generation)
    lower.reserve(tj.count);
    for (std::uint32_t head : tj.buckets)
        for (std::uint32_t idx = head; idx != kNil; idx = nodes_[idx].next)
            lower.emplace_back(idx, nodes_[idx].gen);

    // Detach both levels; lookups during the rebuild must only see nodes that
    // already test the variable moving down.
    std::fill(ti.buckets.begin(), ti.buckets.end(), kNil);
    ti.count = 0;
    std::fill(tj.buckets.begin(), tj.buckets.end(), kNil);
    tj.count = 0;

    // Pass 1: nodes independent of the lower variable migrate down unchanged.
    std::vector<std::uint32_t> to_rebuild;
    for (std::uint32_t idx : upper) {
        Node& n = nodes_[idx];
        bool touches_lower =
            nodes_[index_of(n.low)].level == lvl + 1 || nodes_[index_of(n.high)].level == lvl + 1;
        if (touches_lower) {
            to_rebuild.push_back(idx);
        } else {
            n.level = lvl + 1;
            table_insert(idx);
        }
    }

    // Pass 2: rebuild the rest in place as tests of the lower variable.
    for (std::uint32_t idx : to_rebuild) {
        Node& n = nodes_[idx];
        Edge old_high = n.high;
        Edge old_low = n.low;
        Edge h0, h1, l0, l1;
        cofactors(old_high, lvl + 1, h0, h1);
        cofactors(old_low, lvl + 1, l0, l1);
        Edge a = mk_node(lvl + 1, h1, l1);
        Edge b = mk_node(lvl + 1, h0, l0);
        assert(!complemented(b) && "rebuilt low edge must stay regular");
        Node& n2 = nodes_[idx];  // mk_node may grow the node vector
        n2.high = a;             // keep mk_node's references as child references
        n2.low = b;
        table_insert(idx);
        deref(old_high);
        deref(old_low);
    }

    // Pass 3: surviving nodes of the old lower level move up.
    for (auto [idx, gen] : lower) {
        Node& n = nodes_[idx];
        if (n.gen != gen) continue;  // freed (and possibly recycled) during pass 2
        assert(n.rc > 0);
        n.level = lvl;
        table_insert(idx);
    }

    unsigned vx = level2var_[lvl];
    unsigned vy = level2var_[lvl + 1];
    std::swap(level2var_[lvl], level2var_[lvl + 1]);
    var2level_[vx] = lvl + 1;
    var2level_[vy] = lvl;
    return nodes_alive_;
}

void BddManager::sift_one(unsigned var, std::size_t limit) {
    const int levels = static_cast<int>(tables_.size());
    int pos = static_cast<int>(var2level_[var]);
    std::size_t best_size = nodes_alive_;
    int best_pos = pos;

    // Explore downward, then upward, then settle on the best position seen.
    while (pos + 1 < levels) {
        std::size_t size = swap_levels(pos);
        ++pos;
        if (size < best_size) {
            best_size = size;
            best_pos = pos;
        }
        if (size > limit) break;
    }
    while (pos > 0) {
        std::size_t size = swap_levels(pos - 1);
        --pos;
        if (size < best_size) {
            best_size = size;
            best_pos = pos;
        }
        if (size > limit) break;
    }
    while (pos < best_pos) {
        swap_levels(pos);
        ++pos;
    }
    while (pos > best_pos) {
        swap_levels(pos - 1);
        --pos;
    }
}

ReorderReport BddManager::sift_reorder() {
    ReorderReport report;
    report.nodes_before = nodes_alive_;
    if (tables_.size() < 2) {
        report.nodes_after = nodes_alive_;
        return report;
    }
    garbage_collect();
    cache_clear();
    in_reorder_ = true;

    std::vector<unsigned> vars(num_vars());
    std::iota(vars.begin(), vars.end(), 0u);
    std::sort(vars.begin(), vars.end(), [&](unsigned a, unsigned b) {
        std::uint32_t ca = tables_[var2level_[a]].count;
        std::uint32_t cb = tables_[var2level_[b]].count;
        return ca != cb ? ca > cb : a < b;
    });
    for (unsigned v : vars) {
        std::size_t limit =
            std::max<std::size_t>(static_cast<std::size_t>(nodes_alive_ * config_.max_growth),
                                  nodes_alive_ + 16);
        sift_one(v, limit);
        ++report.vars_sifted;
    }

    in_reorder_ = false;
    cache_clear();
    report.nodes_after = nodes_alive_;
    reorder_threshold_ = std::max(config_.reorder_threshold, 2 * nodes_alive_);
    if (config_.audit_after_op) check_invariants();
    return report;
}

}  // namespace aigsynt
