#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace aigsynt {

class BddManager;

// Conjunction of literals, variables ordered by level.
struct Cube {
    std::vector<std::pair<unsigned, bool>> literals;  // (variable id, polarity)
};

// Handle to a node in a BddManager. Copying is cheap (reference counted).
// Canonicity makes operator== a constant-time pointer comparison.
class Bdd {
public:
    Bdd() = default;
    Bdd(const Bdd& o);
    Bdd(Bdd&& o) noexcept;
    Bdd& operator=(const Bdd& o);
    Bdd& operator=(Bdd&& o) noexcept;
    ~Bdd();

    bool valid() const { return mgr_ != nullptr; }
    BddManager* manager() const { return mgr_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_constant() const { return is_zero() || is_one(); }

    friend bool operator==(const Bdd& a, const Bdd& b) {
        return a.mgr_ == b.mgr_ && a.edge_ == b.edge_;
    }
    friend bool operator!=(const Bdd& a, const Bdd& b) { return !(a == b); }

    Bdd operator!() const;
    Bdd operator&(const Bdd& g) const;
    Bdd operator|(const Bdd& g) const;
    Bdd operator^(const Bdd& g) const;
    Bdd& operator&=(const Bdd& g) { return *this = *this & g; }
    Bdd& operator|=(const Bdd& g) { return *this = *this | g; }
    Bdd& operator^=(const Bdd& g) { return *this = *this ^ g; }

    bool leq(const Bdd& g) const;  // implication: this => g
    Bdd ite(const Bdd& t, const Bdd& e) const;

    // cube must be a conjunction of positive variables.
    Bdd exists(const Bdd& cube) const;
    Bdd forall(const Bdd& cube) const;
    // exists(*this & g, cube) in a single pass.
    Bdd and_exists(const Bdd& g, const Bdd& cube) const;

    // Simultaneous substitution of variables by functions.
    Bdd compose(std::span<const std::pair<unsigned, Bdd>> substitution) const;

    // Generalized cofactor (restrict heuristic): result r satisfies
    // r & care == *this & care. care must not be the zero function.
    Bdd restrict_to(const Bdd& care) const;

    Bdd cofactor(unsigned var, bool value) const;

    // Largest-cube prime implicant; *this must not be zero.
    Cube prime_implicant() const;

    // Deterministic satisfying assignment over vars (level order, prefer 0);
    // support must be contained in vars. *this must not be zero.
    std::vector<bool> pick_minterm(std::span<const unsigned> vars) const;

    // assignment is indexed by variable id.
    bool eval(const std::vector<bool>& assignment) const;

    // Opaque identity token, stable while the handle is alive; equal tokens
    // of one manager denote equal functions.
    std::size_t id() const { return edge_; }
    // Variable tested at the root; *this must not be constant.
    unsigned top_var() const;

    std::size_t node_count() const;
    std::vector<unsigned> support() const;

    void write_dot(std::ostream& out, const std::string& name = "f") const;

private:
    friend class BddManager;
    Bdd(BddManager* mgr, std::uint32_t edge);  // adopts one reference

    BddManager* mgr_ = nullptr;
    std::uint32_t edge_ = 0;
};

enum class ReclamationPolicy { eager, deferred };

struct ReorderReport {
    std::size_t nodes_before = 0;
    std::size_t nodes_after = 0;
    unsigned vars_sifted = 0;
};

// Shared node store with complement edges (low edges are never complemented).
// Single-threaded; independent managers may be used concurrently.
class BddManager {
public:
    struct Config {
        ReclamationPolicy reclamation = ReclamationPolicy::eager;
        bool auto_reorder = false;
        double max_growth = 1.2;          // transient growth bound while sifting
        std::size_t cache_bits = 18;      // computed-cache size = 2^cache_bits
        std::size_t reorder_threshold = 4096;
        bool audit_after_op = false;      // walk the store after each public call
    };

    BddManager();
    explicit BddManager(Config config);
    ~BddManager();
    BddManager(const BddManager&) = delete;
    BddManager& operator=(const BddManager&) = delete;

    unsigned new_var();
    unsigned num_vars() const { return static_cast<unsigned>(var2level_.size()); }
    unsigned level_of(unsigned var) const { return var2level_.at(var); }
    unsigned var_at_level(unsigned level) const { return level2var_.at(level); }

    Bdd one();
    Bdd zero();
    Bdd var(unsigned v);
    Bdd nvar(unsigned v);
    Bdd cube(std::span<const std::pair<unsigned, bool>> literals);
    Bdd cube_positive(std::span<const unsigned> vars);

    ReorderReport sift_reorder();
    void garbage_collect();  // reclaims dead nodes under the deferred policy

    std::size_t live_node_count() const { return nodes_alive_; }
    std::size_t dead_node_count() const { return dead_count_; }
    std::size_t peak_node_count() const { return peak_nodes_; }

    Config& config() { return config_; }
    const Config& config() const { return config_; }

    // Debug audit: canonicity, reducedness, level ordering, complement rule,
    // table membership. Throws std::logic_error on violation.
    void check_invariants() const;

private:
    friend class Bdd;

    using Edge = std::uint32_t;
    static constexpr Edge kTrue = 0;
    static constexpr Edge kFalse = 1;
    static constexpr std::uint32_t kNil = 0xffffffffu;
    static constexpr std::uint32_t kTerminalLevel = 0xffffffffu;
    static constexpr std::uint32_t kMaxRc = 0xffffffffu;

    struct Node {
        std::uint32_t level;
        Edge low;   // never complemented in stored nodes
        Edge high;
        std::uint32_t rc;
        std::uint32_t next;  // unique-table chain / free list
        std::uint32_t gen;   // bumped when the slot is recycled
    };

    struct Subtable {
        std::vector<std::uint32_t> buckets;
        std::uint32_t count = 0;
    };

    enum class Op : std::uint8_t {
        and_op, xor_op, ite_op, exists_op, and_exists_op, restrict_op, cofactor_op
    };

    struct CacheEntry {
        std::uint64_t key[4] = {0, 0, 0, 0};  // op tag + stamped operands
        std::uint64_t result = 0;             // stamped edge
    };

    static std::uint32_t index_of(Edge e) { return e >> 1; }
    static bool complemented(Edge e) { return e & 1u; }

    std::uint32_t level(Edge e) const { return nodes_[index_of(e)].level; }
    std::uint64_t stamp(Edge e) const {
        return (static_cast<std::uint64_t>(nodes_[index_of(e)].gen) << 32) | e;
    }
    void cofactors(Edge e, std::uint32_t lvl, Edge& lo, Edge& hi) const;

    void ref(Edge e);
    void deref(Edge e);
    void free_node(std::uint32_t idx);
    void reclaim(std::uint32_t idx);  // eager cascade

    void table_insert(std::uint32_t idx);
    void table_remove(std::uint32_t idx);
    void maybe_grow_table(std::uint32_t lvl);

    Edge mk_node(std::uint32_t lvl, Edge high, Edge low);  // returns a referenced edge

    bool cache_lookup(Op op, Edge a, Edge b, Edge c, Edge& out) const;
    void cache_store(Op op, Edge a, Edge b, Edge c, Edge result);
    void cache_clear();

    Edge and_rec(Edge f, Edge g);
    Edge xor_rec(Edge f, Edge g);
    Edge ite_rec(Edge f, Edge g, Edge h);
    Edge exists_rec(Edge f, Edge cube);
    Edge and_exists_rec(Edge f, Edge g, Edge cube);
    Edge restrict_rec(Edge f, Edge care);
    Edge cofactor_rec(Edge f, std::uint32_t lvl, bool value);

    void maybe_auto_reorder();
    void after_public_op() const;
    std::size_t swap_levels(std::uint32_t lvl);  // swaps lvl and lvl+1, returns live count
    void sift_one(unsigned var, std::size_t limit);

    Bdd adopt(Edge e) { return Bdd(this, e); }

    Config config_;
    std::vector<Node> nodes_;
    std::vector<Subtable> tables_;          // indexed by level
    std::vector<unsigned> var2level_;
    std::vector<unsigned> level2var_;
    std::vector<CacheEntry> cache_;
    std::uint64_t cache_mask_ = 0;
    std::uint32_t free_head_ = kNil;
    std::size_t nodes_alive_ = 0;
    std::size_t dead_count_ = 0;
    std::size_t peak_nodes_ = 0;
    std::size_t reorder_threshold_ = 0;
    bool in_reorder_ = false;
};

}  // namespace aigsynt
