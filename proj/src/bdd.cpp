#include "aigsynt/bdd.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace aigsynt {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

}  // namespace

// ---------------------------------------------------------------------------
// Bdd handle

Bdd::Bdd(BddManager* mgr, std::uint32_t edge) : mgr_(mgr), edge_(edge) {}

Bdd::Bdd(const Bdd& o) : mgr_(o.mgr_), edge_(o.edge_) {
    if (mgr_) mgr_->ref(edge_);
}

Bdd::Bdd(Bdd&& o) noexcept : mgr_(o.mgr_), edge_(o.edge_) {
    o.mgr_ = nullptr;
    o.edge_ = 0;
}

Bdd& Bdd::operator=(const Bdd& o) {
    if (this == &o) return *this;
    if (o.mgr_) o.mgr_->ref(o.edge_);
    if (mgr_) mgr_->deref(edge_);
    mgr_ = o.mgr_;
    edge_ = o.edge_;
    return *this;
}

Bdd& Bdd::operator=(Bdd&& o) noexcept {
    if (this == &o) return *this;
    if (mgr_) mgr_->deref(edge_);
    mgr_ = o.mgr_;
    edge_ = o.edge_;
    o.mgr_ = nullptr;
    o.edge_ = 0;
    return *this;
}

Bdd::~Bdd() {
    if (mgr_) mgr_->deref(edge_);
}

bool Bdd::is_zero() const { return mgr_ && edge_ == BddManager::kFalse; }
bool Bdd::is_one() const { return mgr_ && edge_ == BddManager::kTrue; }

namespace {

void require_valid(const Bdd& f) {
    if (!f.valid()) throw std::logic_error("operation on an empty Bdd handle");
}

void require_same(const Bdd& a, const Bdd& b) {
    require_valid(a);
    require_valid(b);
    if (a.manager() != b.manager()) throw std::logic_error("Bdd operands belong to different managers");
}

}  // namespace

// ---------------------------------------------------------------------------
// Manager basics

BddManager::BddManager() : BddManager(Config()) {}

BddManager::BddManager(Config config) : config_(config) {
    nodes_.reserve(1024);
    nodes_.push_back(Node{kTerminalLevel, kTrue, kTrue, kMaxRc, kNil, 0});
    nodes_alive_ = 0;  // terminal is not counted
    cache_.resize(std::size_t(1) << config_.cache_bits);
    cache_mask_ = (std::size_t(1) << config_.cache_bits) - 1;
    reorder_threshold_ = config_.reorder_threshold;
}

BddManager::~BddManager() = default;

unsigned BddManager::new_var() {
    unsigned v = static_cast<unsigned>(var2level_.size());
    var2level_.push_back(v);
    level2var_.push_back(v);
    Subtable t;
    t.buckets.assign(8, kNil);
    tables_.push_back(std::move(t));
    return v;
}

void BddManager::ref(Edge e) {
    Node& n = nodes_[index_of(e)];
    if (n.rc < kMaxRc) ++n.rc;
}

void BddManager::deref(Edge e) {
    std::uint32_t idx = index_of(e);
    Node& n = nodes_[idx];
    if (n.rc == kMaxRc) return;
    assert(n.rc > 0 && "reference count underflow");
    if (--n.rc == 0) {
        if (config_.reclamation == ReclamationPolicy::eager || in_reorder_)
            reclaim(idx);
        else
            ++dead_count_;
    }
}

void BddManager::free_node(std::uint32_t idx) {
    Node& n = nodes_[idx];
    ++n.gen;
    n.next = free_head_;
    free_head_ = idx;
    --nodes_alive_;
}

void BddManager::reclaim(std::uint32_t idx) {
    std::vector<std::uint32_t> stack{idx};
    while (!stack.empty()) {
        std::uint32_t i = stack.back();
        stack.pop_back();
        Edge lo = nodes_[i].low;
        Edge hi = nodes_[i].high;
        table_remove(i);
        free_node(i);
        for (Edge child : {lo, hi}) {
            Node& c = nodes_[index_of(child)];
            if (c.rc == kMaxRc) continue;
            assert(c.rc > 0);
            if (--c.rc == 0) stack.push_back(index_of(child));
        }
    }
}

void BddManager::table_insert(std::uint32_t idx) {
    Node& n = nodes_[idx];
    Subtable& t = tables_[n.level];
    std::size_t h = mix64(std::uint64_t(n.high) << 32 | n.low) & (t.buckets.size() - 1);
    n.next = t.buckets[h];
    t.buckets[h] = idx;
    ++t.count;
}

void BddManager::table_remove(std::uint32_t idx) {
    Node& n = nodes_[idx];
    Subtable& t = tables_[n.level];
    std::size_t h = mix64(std::uint64_t(n.high) << 32 | n.low) & (t.buckets.size() - 1);
    std::uint32_t* link = &t.buckets[h];
    while (*link != kNil) {
        if (*link == idx) {
            *link = n.next;
            --t.count;
            return;
        }
        link = &nodes_[*link].next;
    }
    // Node was detached during a level swap; nothing to unlink.
}

void BddManager::maybe_grow_table(std::uint32_t lvl) {
    Subtable& t = tables_[lvl];
    if (t.count <= t.buckets.size()) return;
    std::vector<std::uint32_t> old = std::move(t.buckets);
    t.buckets.assign(old.size() * 2, kNil);
    for (std::uint32_t head : old) {
        while (head != kNil) {
            std::uint32_t next = nodes_[head].next;
            Node& n = nodes_[head];
            std::size_t h = mix64(std::uint64_t(n.high) << 32 | n.low) & (t.buckets.size() - 1);
            n.next = t.buckets[h];
            t.buckets[h] = head;
            head = next;
        }
    }
}

BddManager::Edge BddManager::mk_node(std::uint32_t lvl, Edge high, Edge low) {
    if (high == low) {
        ref(high);
        return high;
    }
    std::uint32_t out_c = low & 1u;
    if (out_c) {
        low ^= 1u;
        high ^= 1u;
    }
    Subtable& t = tables_[lvl];
    std::size_t h = mix64(std::uint64_t(high) << 32 | low) & (t.buckets.size() - 1);
    for (std::uint32_t idx = t.buckets[h]; idx != kNil; idx = nodes_[idx].next) {
        Node& n = nodes_[idx];
        if (n.low == low && n.high == high) {
            if (n.rc == 0) --dead_count_;  // resurrected dead node
            if (n.rc < kMaxRc) ++n.rc;
            return (idx << 1) | out_c;
        }
    }
    std::uint32_t idx;
    if (free_head_ != kNil) {
        idx = free_head_;
        free_head_ = nodes_[idx].next;
    } else {
        idx = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back(Node{});
        nodes_[idx].gen = 0;
    }
    Node& n = nodes_[idx];
    n.level = lvl;
    n.low = low;
    n.high = high;
    n.rc = 1;
    ref(low);
    ref(high);
    ++nodes_alive_;
    peak_nodes_ = std::max(peak_nodes_, nodes_alive_);
    // re-fetch the table: ref() cannot move it, but stay defensive about order
    Subtable& t2 = tables_[lvl];
    std::size_t h2 = mix64(std::uint64_t(high) << 32 | low) & (t2.buckets.size() - 1);
    n.next = t2.buckets[h2];
    t2.buckets[h2] = idx;
    ++t2.count;
    maybe_grow_table(lvl);
    return (idx << 1) | out_c;
}

void BddManager::cofactors(Edge e, std::uint32_t lvl, Edge& lo, Edge& hi) const {
    const Node& n = nodes_[index_of(e)];
    if (n.level != lvl) {
        lo = hi = e;
        return;
    }
    std::uint32_t c = e & 1u;
    lo = n.low ^ c;
    hi = n.high ^ c;
}

// ---------------------------------------------------------------------------
// Computed cache

bool BddManager::cache_lookup(Op op, Edge a, Edge b, Edge c, Edge& out) const {
    std::uint64_t ka = stamp(a), kb = stamp(b), kc = stamp(c);
    std::uint64_t tag = static_cast<std::uint64_t>(op) + 1;
    std::size_t slot = mix64(ka ^ mix64(kb ^ mix64(kc ^ tag))) & cache_mask_;
    const CacheEntry& e = cache_[slot];
    if (e.key[0] != tag || e.key[1] != ka || e.key[2] != kb || e.key[3] != kc) return false;
    Edge r = static_cast<Edge>(e.result & 0xffffffffu);
    if (stamp(r) != e.result) return false;  // result slot was recycled
    out = r;
    return true;
}

void BddManager::cache_store(Op op, Edge a, Edge b, Edge c, Edge result) {
    std::uint64_t ka = stamp(a), kb = stamp(b), kc = stamp(c);
    std::uint64_t tag = static_cast<std::uint64_t>(op) + 1;
    std::size_t slot = mix64(ka ^ mix64(kb ^ mix64(kc ^ tag))) & cache_mask_;
    cache_[slot] = CacheEntry{{tag, ka, kb, kc}, stamp(result)};
}

void BddManager::cache_clear() {
    std::fill(cache_.begin(), cache_.end(), CacheEntry{});
}

// ---------------------------------------------------------------------------
// Core recursive operations. Every function returns an edge carrying one
// reference owned by the caller; terminal references saturate and are free.

BddManager::Edge BddManager::and_rec(Edge f, Edge g) {
    if (f == g) {
        ref(f);
        return f;
    }
    if (f == (g ^ 1u)) return kFalse;
    if (f == kTrue) {
        ref(g);
        return g;
    }
    if (g == kTrue) {
        ref(f);
        return f;
    }
    if (f == kFalse || g == kFalse) return kFalse;
    if (g < f) std::swap(f, g);
    Edge out;
    if (cache_lookup(Op::and_op, f, g, kTrue, out)) {
        ref(out);
        return out;
    }
    std::uint32_t lvl = std::min(level(f), level(g));
    Edge f0, f1, g0, g1;
    cofactors(f, lvl, f0, f1);
    cofactors(g, lvl, g0, g1);
    Edge r0 = and_rec(f0, g0);
    Edge r1 = and_rec(f1, g1);
    Edge res = mk_node(lvl, r1, r0);
    deref(r1);
    deref(r0);
    cache_store(Op::and_op, f, g, kTrue, res);
    return res;
}

BddManager::Edge BddManager::xor_rec(Edge f, Edge g) {
    if (f == g) return kFalse;
    if (f == (g ^ 1u)) return kTrue;
    if (f == kFalse) {
        ref(g);
        return g;
    }
    if (f == kTrue) {
        ref(g);
        return g ^ 1u;
    }
    if (g == kFalse) {
        ref(f);
        return f;
    }
    if (g == kTrue) {
        ref(f);
        return f ^ 1u;
    }
    std::uint32_t s = (f & 1u) ^ (g & 1u);
    f &= ~1u;
    g &= ~1u;
    if (g < f) std::swap(f, g);
    Edge out;
    if (cache_lookup(Op::xor_op, f, g, kTrue, out)) {
        ref(out);
        return out ^ s;
    }
    std::uint32_t lvl = std::min(level(f), level(g));
    Edge f0, f1, g0, g1;
    cofactors(f, lvl, f0, f1);
    cofactors(g, lvl, g0, g1);
    Edge r0 = xor_rec(f0, g0);
    Edge r1 = xor_rec(f1, g1);
    Edge res = mk_node(lvl, r1, r0);
    deref(r1);
    deref(r0);
    cache_store(Op::xor_op, f, g, kTrue, res);
    return res ^ s;
}

BddManager::Edge BddManager::ite_rec(Edge f, Edge g, Edge h) {
    if (f == kTrue) {
        ref(g);
        return g;
    }
    if (f == kFalse) {
        ref(h);
        return h;
    }
    if (g == h) {
        ref(g);
        return g;
    }
    if (f == g || g == kTrue) {
        Edge r = and_rec(f ^ 1u, h ^ 1u);  // f | h
        return r ^ 1u;
    }
    if (f == (g ^ 1u) || g == kFalse) return and_rec(f ^ 1u, h);
    if (f == h || h == kFalse) return and_rec(f, g);
    if (f == (h ^ 1u) || h == kTrue) {
        Edge r = and_rec(f, g ^ 1u);  // !f | g
        return r ^ 1u;
    }
    if (f & 1u) {
        std::swap(g, h);
        f ^= 1u;
    }
    std::uint32_t oc = 0;
    if (g & 1u) {
        g ^= 1u;
        h ^= 1u;
        oc = 1u;
    }
    Edge out;
    if (cache_lookup(Op::ite_op, f, g, h, out)) {
        ref(out);
        return out ^ oc;
    }
    std::uint32_t lvl = std::min({level(f), level(g), level(h)});
    Edge f0, f1, g0, g1, h0, h1;
    cofactors(f, lvl, f0, f1);
    cofactors(g, lvl, g0, g1);
    cofactors(h, lvl, h0, h1);
    Edge r0 = ite_rec(f0, g0, h0);
    Edge r1 = ite_rec(f1, g1, h1);
    Edge res = mk_node(lvl, r1, r0);
    deref(r1);
    deref(r0);
    cache_store(Op::ite_op, f, g, h, res);
    return res ^ oc;
}

BddManager::Edge BddManager::exists_rec(Edge f, Edge cube) {
    if (f == kTrue || f == kFalse) return f;
    std::uint32_t lf = level(f);
    while (cube != kTrue && level(cube) < lf) {
        Edge lo, hi;
        cofactors(cube, level(cube), lo, hi);
        cube = hi;
    }
    if (cube == kTrue) {
        ref(f);
        return f;
    }
    Edge out;
    if (cache_lookup(Op::exists_op, f, cube, kTrue, out)) {
        ref(out);
        return out;
    }
    Edge f0, f1;
    cofactors(f, lf, f0, f1);
    Edge res;
    if (level(cube) == lf) {
        Edge lo, hi;
        cofactors(cube, lf, lo, hi);
        Edge rest = hi;
        Edge r0 = exists_rec(f0, rest);
        if (r0 == kTrue) {
            res = kTrue;
        } else {
            Edge r1 = exists_rec(f1, rest);
            Edge conj = and_rec(r0 ^ 1u, r1 ^ 1u);
            res = conj ^ 1u;
            deref(r1);
            deref(r0);
        }
    } else {
        Edge r0 = exists_rec(f0, cube);
        Edge r1 = exists_rec(f1, cube);
        res = mk_node(lf, r1, r0);
        deref(r1);
        deref(r0);
    }
    cache_store(Op::exists_op, f, cube, kTrue, res);
    return res;
}

BddManager::Edge BddManager::and_exists_rec(Edge f, Edge g, Edge cube) {
    if (f == kFalse || g == kFalse || f == (g ^ 1u)) return kFalse;
    if (f == kTrue && g == kTrue) return kTrue;
    if (f == kTrue) return exists_rec(g, cube);
    if (g == kTrue || f == g) return exists_rec(f, cube);
    if (cube == kTrue) return and_rec(f, g);
    if (g < f) std::swap(f, g);
    std::uint32_t lvl = std::min(level(f), level(g));
    while (cube != kTrue && level(cube) < lvl) {
        Edge lo, hi;
        cofactors(cube, level(cube), lo, hi);
        cube = hi;
    }
    if (cube == kTrue) return and_rec(f, g);
    Edge out;
    if (cache_lookup(Op::and_exists_op, f, g, cube, out)) {
        ref(out);
        return out;
    }
    Edge f0, f1, g0, g1;
    cofactors(f, lvl, f0, f1);
    cofactors(g, lvl, g0, g1);
    Edge res;
    if (level(cube) == lvl) {
        Edge lo, hi;
        cofactors(cube, lvl, lo, hi);
        Edge rest = hi;
        Edge r0 = and_exists_rec(f0, g0, rest);
        if (r0 == kTrue) {
            res = kTrue;
        } else {
            Edge r1 = and_exists_rec(f1, g1, rest);
            Edge conj = and_rec(r0 ^ 1u, r1 ^ 1u);
            res = conj ^ 1u;
            deref(r1);
            deref(r0);
        }
    } else {
        Edge r0 = and_exists_rec(f0, g0, cube);
        Edge r1 = and_exists_rec(f1, g1, cube);
        res = mk_node(lvl, r1, r0);
        deref(r1);
        deref(r0);
    }
    cache_store(Op::and_exists_op, f, g, cube, res);
    return res;
}

BddManager::Edge BddManager::restrict_rec(Edge f, Edge care) {
    assert(care != kFalse);
    if (care == kTrue || f == kTrue || f == kFalse) {
        ref(f);
        return f;
    }
    if (f == care) return kTrue;
    if (f == (care ^ 1u)) return kFalse;
    Edge out;
    if (cache_lookup(Op::restrict_op, f, care, kTrue, out)) {
        ref(out);
        return out;
    }
    std::uint32_t lf = level(f), lc = level(care);
    Edge res;
    if (lc < lf) {
        // care tests a variable f does not depend on: abstract it away
        Edge c0, c1;
        cofactors(care, lc, c0, c1);
        Edge conj = and_rec(c0 ^ 1u, c1 ^ 1u);
        Edge merged = conj ^ 1u;
        res = restrict_rec(f, merged);
        deref(merged);
    } else if (lf == lc) {
        Edge f0, f1, c0, c1;
        cofactors(f, lf, f0, f1);
        cofactors(care, lf, c0, c1);
        if (c0 == kFalse) {
            res = restrict_rec(f1, c1);
        } else if (c1 == kFalse) {
            res = restrict_rec(f0, c0);
        } else {
            Edge r0 = restrict_rec(f0, c0);
            Edge r1 = restrict_rec(f1, c1);
            res = mk_node(lf, r1, r0);
            deref(r1);
            deref(r0);
        }
    } else {
        Edge f0, f1;
        cofactors(f, lf, f0, f1);
        Edge r0 = restrict_rec(f0, care);
        Edge r1 = restrict_rec(f1, care);
        res = mk_node(lf, r1, r0);
        deref(r1);
        deref(r0);
    }
    cache_store(Op::restrict_op, f, care, kTrue, res);
    return res;
}

BddManager::Edge BddManager::cofactor_rec(Edge f, std::uint32_t lvl, bool value) {
    if (f == kTrue || f == kFalse || level(f) > lvl) {
        ref(f);
        return f;
    }
    if (level(f) == lvl) {
        Edge f0, f1;
        cofactors(f, lvl, f0, f1);
        Edge r = value ? f1 : f0;
        ref(r);
        return r;
    }
    // The key carries a level, not an edge, so probe the cache directly.
    std::uint64_t packed = (std::uint64_t(lvl) << 1) | (value ? 1u : 0u);
    std::uint64_t tag = static_cast<std::uint64_t>(Op::cofactor_op) + 1;
    std::uint64_t ka = stamp(f);
    std::size_t slot = mix64(ka ^ mix64(packed ^ mix64(tag))) & cache_mask_;
    {
        const CacheEntry& e = cache_[slot];
        if (e.key[0] == tag && e.key[1] == ka && e.key[2] == packed) {
            Edge r = static_cast<Edge>(e.result & 0xffffffffu);
            if (stamp(r) == e.result) {
                ref(r);
                return r;
            }
        }
    }
    std::uint32_t lf = level(f);
    Edge f0, f1;
    cofactors(f, lf, f0, f1);
    Edge r0 = cofactor_rec(f0, lvl, value);
    Edge r1 = cofactor_rec(f1, lvl, value);
    Edge res = mk_node(lf, r1, r0);
    deref(r1);
    deref(r0);
    cache_[slot] = CacheEntry{{tag, ka, packed, 0}, stamp(res)};
    return res;
}

// ---------------------------------------------------------------------------
// Public manager surface

void BddManager::after_public_op() const {
    if (config_.audit_after_op) check_invariants();
}

void BddManager::maybe_auto_reorder() {
    if (config_.auto_reorder && !in_reorder_ && nodes_alive_ > reorder_threshold_) sift_reorder();
}

Bdd BddManager::one() {
    return adopt(kTrue);
}

Bdd BddManager::zero() {
    return adopt(kFalse);
}

Bdd BddManager::var(unsigned v) {
    if (v >= num_vars()) throw std::invalid_argument("unregistered variable " + std::to_string(v));
    Edge e = mk_node(var2level_[v], kTrue, kFalse);
    after_public_op();
    return adopt(e);
}

Bdd BddManager::nvar(unsigned v) {
    Bdd p = var(v);
    return !p;
}

Bdd BddManager::cube(std::span<const std::pair<unsigned, bool>> literals) {
    std::vector<std::pair<unsigned, bool>> lits(literals.begin(), literals.end());
    for (auto& [v, pol] : lits)
        if (v >= num_vars()) throw std::invalid_argument("unregistered variable " + std::to_string(v));
    std::sort(lits.begin(), lits.end(), [&](const auto& a, const auto& b) {
        return var2level_[a.first] > var2level_[b.first];  // deepest first
    });
    for (std::size_t i = 0; i + 1 < lits.size(); ++i)
        if (lits[i].first == lits[i + 1].first)
            throw std::invalid_argument("cube with a repeated variable");
    Edge e = kTrue;
    for (const auto& [v, pol] : lits) {
        Edge prev = e;
        e = pol ? mk_node(var2level_[v], prev, kFalse) : mk_node(var2level_[v], kFalse, prev);
        deref(prev);
    }
    after_public_op();
    return adopt(e);
}

Bdd BddManager::cube_positive(std::span<const unsigned> vars) {
    std::vector<std::pair<unsigned, bool>> lits;
    lits.reserve(vars.size());
    for (unsigned v : vars) lits.emplace_back(v, true);
    return cube(lits);
}

void BddManager::garbage_collect() {
    if (dead_count_ == 0) return;
    // Sweep top-down so cascading deaths stay ahead of the scan.
    for (std::uint32_t lvl = 0; lvl < tables_.size(); ++lvl) {
        Subtable& t = tables_[lvl];
        for (std::size_t b = 0; b < t.buckets.size(); ++b) {
            std::uint32_t* link = &t.buckets[b];
            while (*link != kNil) {
                std::uint32_t idx = *link;
                Node& n = nodes_[idx];
                if (n.rc == 0) {
                    *link = n.next;
                    --t.count;
                    --dead_count_;
                    Edge lo = n.low, hi = n.high;
                    free_node(idx);
                    for (Edge child : {lo, hi}) {
                        Node& c = nodes_[index_of(child)];
                        if (c.rc == kMaxRc) continue;
                        assert(c.rc > 0);
                        if (--c.rc == 0) ++dead_count_;
                    }
                } else {
                    link = &n.next;
                }
            }
        }
    }
    assert(dead_count_ == 0);
}

void BddManager::check_invariants() const {
    std::size_t alive = 0;
    for (std::uint32_t lvl = 0; lvl < tables_.size(); ++lvl) {
        const Subtable& t = tables_[lvl];
        std::size_t in_table = 0;
        std::unordered_set<std::uint64_t> seen;
        for (std::uint32_t head : t.buckets) {
            for (std::uint32_t idx = head; idx != kNil; idx = nodes_[idx].next) {
                const Node& n = nodes_[idx];
                ++in_table;
                if (n.level != lvl) throw std::logic_error("node filed under the wrong level");
                if (complemented(n.low)) throw std::logic_error("complemented low edge");
                if (n.low == n.high) throw std::logic_error("reducedness violated");
                for (Edge child : {n.low, n.high}) {
                    const Node& c = nodes_[index_of(child)];
                    if (c.level != kTerminalLevel && c.level <= lvl)
                        throw std::logic_error("level ordering violated");
                    if (c.level != kTerminalLevel && c.rc == 0 &&
                        config_.reclamation == ReclamationPolicy::eager)
                        throw std::logic_error("live node points at a dead child");
                }
                if (!seen.insert(std::uint64_t(n.high) << 32 | n.low).second)
                    throw std::logic_error("canonicity violated: duplicate node");
                if (config_.reclamation == ReclamationPolicy::eager && n.rc == 0)
                    throw std::logic_error("dead node resident under eager reclamation");
            }
        }
        if (in_table != t.count) throw std::logic_error("subtable count out of sync");
        alive += in_table;
    }
    if (alive != nodes_alive_) throw std::logic_error("live node count out of sync");
}

// ---------------------------------------------------------------------------
// Bdd operation wrappers

Bdd Bdd::operator!() const {
    require_valid(*this);
    mgr_->ref(edge_ ^ 1u);
    return Bdd(mgr_, edge_ ^ 1u);
}

Bdd Bdd::operator&(const Bdd& g) const {
    require_same(*this, g);
    mgr_->maybe_auto_reorder();
    BddManager::Edge r = mgr_->and_rec(edge_, g.edge_);
    mgr_->after_public_op();
    return Bdd(mgr_, r);
}

Bdd Bdd::operator|(const Bdd& g) const {
    require_same(*this, g);
    mgr_->maybe_auto_reorder();
    BddManager::Edge r = mgr_->and_rec(edge_ ^ 1u, g.edge_ ^ 1u);
    mgr_->after_public_op();
    return Bdd(mgr_, r ^ 1u);
}

Bdd Bdd::operator^(const Bdd& g) const {
    require_same(*this, g);
    mgr_->maybe_auto_reorder();
    BddManager::Edge r = mgr_->xor_rec(edge_, g.edge_);
    mgr_->after_public_op();
    return Bdd(mgr_, r);
}

bool Bdd::leq(const Bdd& g) const {
    require_same(*this, g);
    BddManager::Edge r = mgr_->and_rec(edge_, g.edge_ ^ 1u);
    bool ok = (r == BddManager::kFalse);
    mgr_->deref(r);
    return ok;
}

Bdd Bdd::ite(const Bdd& t, const Bdd& e) const {
    require_same(*this, t);
    require_same(*this, e);
    mgr_->maybe_auto_reorder();
    BddManager::Edge r = mgr_->ite_rec(edge_, t.edge_, e.edge_);
    mgr_->after_public_op();
    return Bdd(mgr_, r);
}

Bdd Bdd::exists(const Bdd& cube) const {
    require_same(*this, cube);
    mgr_->maybe_auto_reorder();
    BddManager::Edge r = mgr_->exists_rec(edge_, cube.edge_);
    mgr_->after_public_op();
    return Bdd(mgr_, r);
}

Bdd Bdd::forall(const Bdd& cube) const {
    require_same(*this, cube);
    mgr_->maybe_auto_reorder();
    BddManager::Edge r = mgr_->exists_rec(edge_ ^ 1u, cube.edge_);
    mgr_->after_public_op();
    return Bdd(mgr_, r ^ 1u);
}

Bdd Bdd::and_exists(const Bdd& g, const Bdd& cube) const {
    require_same(*this, g);
    require_same(*this, cube);
    mgr_->maybe_auto_reorder();
    BddManager::Edge r = mgr_->and_exists_rec(edge_, g.edge_, cube.edge_);
    mgr_->after_public_op();
    return Bdd(mgr_, r);
}

Bdd Bdd::restrict_to(const Bdd& care) const {
    require_same(*this, care);
    if (care.is_zero()) throw std::invalid_argument("restrict_to: care set is empty");
    mgr_->maybe_auto_reorder();
    BddManager::Edge r = mgr_->restrict_rec(edge_, care.edge_);
    mgr_->after_public_op();
    return Bdd(mgr_, r);
}

Bdd Bdd::cofactor(unsigned var, bool value) const {
    require_valid(*this);
    if (var >= mgr_->num_vars()) throw std::invalid_argument("unregistered variable");
    BddManager::Edge r = mgr_->cofactor_rec(edge_, mgr_->var2level_[var], value);
    mgr_->after_public_op();
    return Bdd(mgr_, r);
}

Bdd Bdd::compose(std::span<const std::pair<unsigned, Bdd>> substitution) const {
    require_valid(*this);
    if (substitution.empty()) return *this;
    std::vector<BddManager::Edge> by_level(mgr_->num_vars(), BddManager::kNil);
    std::uint32_t deepest = 0;
    for (const auto& [v, g] : substitution) {
        require_same(*this, g);
        if (v >= mgr_->num_vars()) throw std::invalid_argument("unregistered variable");
        std::uint32_t lvl = mgr_->var2level_[v];
        by_level[lvl] = g.edge_;
        deepest = std::max(deepest, lvl);
    }
    mgr_->maybe_auto_reorder();

    BddManager& m = *mgr_;
    std::unordered_map<std::uint32_t, BddManager::Edge> memo;
    auto walk = [&](auto&& self, BddManager::Edge e) -> BddManager::Edge {
        if (e <= 1u || m.level(e) > deepest) {
            m.ref(e);
            return e;
        }
        if (auto it = memo.find(e); it != memo.end()) {
            m.ref(it->second);
            return it->second;
        }
        std::uint32_t lvl = m.level(e);
        BddManager::Edge e0, e1;
        m.cofactors(e, lvl, e0, e1);
        BddManager::Edge r0 = self(self, e0);
        BddManager::Edge r1 = self(self, e1);
        BddManager::Edge res;
        if (by_level[lvl] == BddManager::kNil) {
            if (r0 == e0 && r1 == e1) {
                m.ref(e);
                res = e;
            } else {
                BddManager::Edge v = m.mk_node(lvl, BddManager::kTrue, BddManager::kFalse);
                res = m.ite_rec(v, r1, r0);
                m.deref(v);
            }
        } else {
            res = m.ite_rec(by_level[lvl], r1, r0);
        }
        m.deref(r1);
        m.deref(r0);
        memo.emplace(e, res);  // memo owns this reference
        m.ref(res);
        return res;
    };
    BddManager::Edge out = walk(walk, edge_);
    for (auto& kv : memo) m.deref(kv.second);
    m.after_public_op();
    return Bdd(mgr_, out);
}

Cube Bdd::prime_implicant() const {
    require_valid(*this);
    if (is_zero()) throw std::invalid_argument("prime_implicant of the zero function");
    BddManager& m = *mgr_;
    constexpr int kInf = 1 << 29;

    // Fewest-literal path to the one-terminal.
    std::unordered_map<std::uint32_t, int> len;
    auto path_len = [&](auto&& self, BddManager::Edge e) -> int {
        if (e == BddManager::kTrue) return 0;
        if (e == BddManager::kFalse) return kInf;
        if (auto it = len.find(e); it != len.end()) return it->second;
        std::uint32_t lvl = m.level(e);
        BddManager::Edge e0, e1;
        m.cofactors(e, lvl, e0, e1);
        int r = std::min(self(self, e0), self(self, e1)) + 1;
        len.emplace(e, r);
        return r;
    };
    path_len(path_len, edge_);

    std::vector<std::pair<unsigned, bool>> lits;
    BddManager::Edge e = edge_;
    while (e != BddManager::kTrue) {
        std::uint32_t lvl = m.level(e);
        BddManager::Edge e0, e1;
        m.cofactors(e, lvl, e0, e1);
        int l0 = e0 == BddManager::kTrue ? 0 : (e0 == BddManager::kFalse ? kInf : len.at(e0));
        int l1 = e1 == BddManager::kTrue ? 0 : (e1 == BddManager::kFalse ? kInf : len.at(e1));
        if (l0 <= l1) {
            lits.emplace_back(m.level2var_[lvl], false);
            e = e0;
        } else {
            lits.emplace_back(m.level2var_[lvl], true);
            e = e1;
        }
    }

    // Expand to a prime: drop a literal whenever the cube still implies f.
    // Deep literals are tried first, so top-of-order literals are kept.
    auto implies = [&](const std::vector<std::pair<unsigned, bool>>& cube_lits) {
        Bdd c = m.cube(cube_lits);
        return c.leq(*this);
    };
    for (std::size_t i = lits.size(); i-- > 0;) {
        std::vector<std::pair<unsigned, bool>> trial;
        trial.reserve(lits.size() - 1);
        for (std::size_t j = 0; j < lits.size(); ++j)
            if (j != i) trial.push_back(lits[j]);
        if (implies(trial)) lits = std::move(trial);
    }

    std::sort(lits.begin(), lits.end(), [&](const auto& a, const auto& b) {
        return m.var2level_[a.first] < m.var2level_[b.first];
    });
    return Cube{std::move(lits)};
}

std::vector<bool> Bdd::pick_minterm(std::span<const unsigned> vars) const {
    require_valid(*this);
    if (is_zero()) throw std::invalid_argument("pick_minterm of the zero function");
    BddManager& m = *mgr_;
    std::vector<unsigned> order(vars.begin(), vars.end());
    std::sort(order.begin(), order.end(),
              [&](unsigned a, unsigned b) { return m.var2level_[a] < m.var2level_[b]; });
    std::unordered_map<unsigned, bool> chosen;
    BddManager::Edge cur = edge_;
    m.ref(cur);
    for (unsigned v : order) {
        std::uint32_t lvl = m.var2level_[v];
        BddManager::Edge e0 = m.cofactor_rec(cur, lvl, false);
        if (e0 != BddManager::kFalse) {
            chosen[v] = false;
            m.deref(cur);
            cur = e0;
        } else {
            m.deref(e0);
            BddManager::Edge e1 = m.cofactor_rec(cur, lvl, true);
            chosen[v] = true;
            m.deref(cur);
            cur = e1;
        }
    }
    bool complete = (cur == BddManager::kTrue);
    m.deref(cur);
    if (!complete)
        throw std::invalid_argument("pick_minterm: support is not covered by the given variables");
    std::vector<bool> out;
    out.reserve(vars.size());
    for (unsigned v : vars) out.push_back(chosen.at(v));
    return out;
}

bool Bdd::eval(const std::vector<bool>& assignment) const {
    require_valid(*this);
    BddManager& m = *mgr_;
    BddManager::Edge e = edge_;
    bool neg = false;
    while (e > 1u) {
        neg ^= BddManager::complemented(e);
        const auto& n = m.nodes_[BddManager::index_of(e)];
        unsigned v = m.level2var_[n.level];
        if (v >= assignment.size()) throw std::invalid_argument("assignment is too short");
        e = assignment[v] ? n.high : n.low;
    }
    bool value = (e == BddManager::kTrue);
    return value != neg;
}

unsigned Bdd::top_var() const {
    require_valid(*this);
    if (is_constant()) throw std::logic_error("top_var of a constant function");
    return mgr_->level2var_[mgr_->level(edge_)];
}

std::size_t Bdd::node_count() const {
    require_valid(*this);
    if (is_constant()) return 0;
    BddManager& m = *mgr_;
    std::unordered_set<std::uint32_t> seen;
    std::vector<std::uint32_t> stack{BddManager::index_of(edge_)};
    while (!stack.empty()) {
        std::uint32_t idx = stack.back();
        stack.pop_back();
        if (idx == 0 || !seen.insert(idx).second) continue;
        stack.push_back(BddManager::index_of(m.nodes_[idx].low));
        stack.push_back(BddManager::index_of(m.nodes_[idx].high));
    }
    return seen.size();
}

std::vector<unsigned> Bdd::support() const {
    require_valid(*this);
    BddManager& m = *mgr_;
    std::unordered_set<std::uint32_t> seen;
    std::vector<std::uint32_t> levels_found;
    std::vector<std::uint32_t> stack{BddManager::index_of(edge_)};
    while (!stack.empty()) {
        std::uint32_t idx = stack.back();
        stack.pop_back();
        if (idx == 0 || !seen.insert(idx).second) continue;
        levels_found.push_back(m.nodes_[idx].level);
        stack.push_back(BddManager::index_of(m.nodes_[idx].low));
        stack.push_back(BddManager::index_of(m.nodes_[idx].high));
    }
    std::sort(levels_found.begin(), levels_found.end());
    levels_found.erase(std::unique(levels_found.begin(), levels_found.end()), levels_found.end());
    std::vector<unsigned> vars;
    vars.reserve(levels_found.size());
    for (std::uint32_t lvl : levels_found) vars.push_back(m.level2var_[lvl]);
    return vars;
}

void Bdd::write_dot(std::ostream& out, const std::string& name) const {
    require_valid(*this);
    BddManager& m = *mgr_;
    out << "digraph \"" << name << "\" {\n";
    out << "  root [shape=plaintext,label=\"" << name << "\"];\n";
    out << "  root -> n" << BddManager::index_of(edge_)
        << (BddManager::complemented(edge_) ? " [style=dotted]" : "") << ";\n";
    out << "  n0 [shape=box,label=\"1\"];\n";
    std::unordered_set<std::uint32_t> seen;
    std::vector<std::uint32_t> stack{BddManager::index_of(edge_)};
    while (!stack.empty()) {
        std::uint32_t idx = stack.back();
        stack.pop_back();
        if (idx == 0 || !seen.insert(idx).second) continue;
        const auto& n = m.nodes_[idx];
        out << "  n" << idx << " [label=\"x" << m.level2var_[n.level] << "\"];\n";
        out << "  n" << idx << " -> n" << BddManager::index_of(n.low) << " [style=dashed];\n";
        out << "  n" << idx << " -> n" << BddManager::index_of(n.high)
            << (BddManager::complemented(n.high) ? " [style=dotted]" : "") << ";\n";
        stack.push_back(BddManager::index_of(n.low));
        stack.push_back(BddManager::index_of(n.high));
    }
    out << "}\n";
}

}  // namespace aigsynt
