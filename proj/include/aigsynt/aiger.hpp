#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aigsynt {

// AIGER literal: even = plain variable reference, odd = negated,
// 0/1 = constant false/true.
struct Literal {
    unsigned value = 0;

    constexpr Literal() = default;
    constexpr explicit Literal(unsigned v) : value(v) {}
    static constexpr Literal of_var(unsigned var, bool negated = false) {
        return Literal(2 * var + (negated ? 1u : 0u));
    }

    constexpr unsigned var() const { return value >> 1; }
    constexpr bool negated() const { return value & 1u; }
    constexpr bool is_constant() const { return value < 2; }
    constexpr Literal operator!() const { return Literal(value ^ 1u); }
    constexpr Literal strip() const { return Literal(value & ~1u); }

    friend constexpr bool operator==(Literal a, Literal b) { return a.value == b.value; }
    friend constexpr bool operator!=(Literal a, Literal b) { return a.value != b.value; }
    friend constexpr bool operator<(Literal a, Literal b) { return a.value < b.value; }
};

inline constexpr Literal lit_false{0};
inline constexpr Literal lit_true{1};

struct Latch {
    Literal state;  // even
    Literal next;
    friend bool operator==(const Latch&, const Latch&) = default;
};

struct AndGate {
    Literal lhs;  // even, var strictly greater than both operand vars
    Literal rhs0;
    Literal rhs1;
    friend bool operator==(const AndGate&, const AndGate&) = default;
};

enum class SymbolKind { input, latch, output };

struct Circuit {
    unsigned max_var = 0;
    std::vector<Literal> inputs;
    std::vector<Latch> latches;
    std::vector<Literal> outputs;
    std::vector<AndGate> ands;
    std::map<std::pair<SymbolKind, std::size_t>, std::string> symbols;
    std::vector<std::string> comments;

    const std::string* symbol(SymbolKind kind, std::size_t pos) const;
    void set_symbol(SymbolKind kind, std::size_t pos, std::string name);

    // Throws std::invalid_argument when a structural invariant is broken
    // (literal out of range, duplicate variable definition, AND ordering,
    // variable indices not covering 1..max_var).
    void validate() const;

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

// Input positions split into environment-driven and system-driven groups.
struct ControlPartition {
    std::vector<std::size_t> uncontrollable;  // X_u
    std::vector<std::size_t> controllable;    // X_c
};

// Input symbol names carrying this prefix mark controllable inputs.
inline constexpr std::string_view kControllablePrefix = "controllable_";

struct MetaInfo {
    enum class Status { realizable, unrealizable, unknown };

    struct SolvedBy {
        unsigned numerator = 0;
        unsigned denominator = 0;
        std::string label;
        friend bool operator==(const SolvedBy&, const SolvedBy&) = default;
    };
    struct SolvedIn {
        double seconds = 0.0;
        std::string label;
        friend bool operator==(const SolvedIn&, const SolvedIn&) = default;
    };

    Status status = Status::unknown;
    std::optional<SolvedBy> solved_by;
    std::optional<SolvedIn> solved_in;
    std::optional<unsigned> ref_size;  // 0 is normalized to absent

    friend bool operator==(const MetaInfo&, const MetaInfo&) = default;
};

std::string to_string(MetaInfo::Status s);

// Parse failure; line is 1-based within the parsed text (for parse_meta,
// 1-based within the comment section).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// ASCII AIGER ("aag") reader/writer. Binary "aig" input is rejected.
Circuit parse_aag(std::string_view text);
std::string write_aag(const Circuit& c);

Circuit read_aag_file(const std::string& path);
void write_aag_file(const Circuit& c, const std::string& path);

// Splits inputs by the controllable_ name prefix; every input needs a symbol.
ControlPartition partition_inputs(const Circuit& c);

// Reads the #!SYNTCOMP ... #. paragraph from the comment section. Unknown
// keys produce warnings (collected if a sink is given), malformed values
// throw ParseError. A missing paragraph yields a default MetaInfo.
MetaInfo parse_meta(const Circuit& c, std::vector<std::string>* warnings = nullptr);

// Canonical meta paragraph (including the #!SYNTCOMP / #. delimiters).
std::vector<std::string> write_meta(const MetaInfo& m);

// Replaces (or appends) the meta paragraph in the comment section.
Circuit with_meta(Circuit c, const MetaInfo& m);

}  // namespace aigsynt
