#include "aigsynt/aiger.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace aigsynt {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

const std::string* Circuit::symbol(SymbolKind kind, std::size_t pos) const {
    auto it = symbols.find({kind, pos});
    return it == symbols.end() ? nullptr : &it->second;
}

void Circuit::set_symbol(SymbolKind kind, std::size_t pos, std::string name) {
    symbols[{kind, pos}] = std::move(name);
}

void Circuit::validate() const {
    auto check_lit = [&](Literal l, const char* where) {
        if (l.var() > max_var)
            throw std::invalid_argument(std::string(where) + ": literal " +
                                        std::to_string(l.value) + " exceeds max variable " +
                                        std::to_string(max_var));
    };
    // 0 = unseen, 1 = input, 2 = latch, 3 = and
    std::vector<unsigned char> def(max_var + 1, 0);
    auto define = [&](Literal l, unsigned char kind, const char* where) {
        check_lit(l, where);
        if (l.negated())
            throw std::invalid_argument(std::string(where) + ": definition literal " +
                                        std::to_string(l.value) + " is negated");
        if (l.var() == 0)
            throw std::invalid_argument(std::string(where) + ": constant cannot be defined");
        if (def[l.var()] != 0)
            throw std::invalid_argument(std::string(where) + ": duplicate definition of variable " +
                                        std::to_string(l.var()));
        def[l.var()] = kind;
    };
    for (Literal in : inputs) define(in, 1, "input");
    for (const Latch& l : latches) {
        define(l.state, 2, "latch");
        check_lit(l.next, "latch next");
    }
    for (Literal out : outputs) check_lit(out, "output");
    for (const AndGate& g : ands) {
        define(g.lhs, 3, "and gate");
        check_lit(g.rhs0, "and gate operand");
        check_lit(g.rhs1, "and gate operand");
        if (g.lhs.var() <= g.rhs0.var() || g.lhs.var() <= g.rhs1.var())
            throw std::invalid_argument("and gate " + std::to_string(g.lhs.value) +
                                        " does not dominate its operands");
    }
    for (unsigned v = 1; v <= max_var; ++v)
        if (def[v] == 0)
            throw std::invalid_argument("variable " + std::to_string(v) + " is never defined");
}

std::string to_string(MetaInfo::Status s) {
    switch (s) {
        case MetaInfo::Status::realizable: return "realizable";
        case MetaInfo::Status::unrealizable: return "unrealizable";
        default: return "unknown";
    }
}

namespace {

struct LineReader {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line_no = 0;

    bool next(std::string_view& out) {
        if (pos >= text.size()) return false;
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        out = text.substr(pos, end - pos);
        if (!out.empty() && out.back() == '\r') out.remove_suffix(1);
        pos = end + 1;
        ++line_no;
        return true;
    }
};

unsigned parse_uint(std::string_view tok, std::size_t line, const char* what) {
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(tok) + "'");
    return value;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Circuit parse_aag(std::string_view text) {
    LineReader rd{text};
    std::string_view line;
    if (!rd.next(line)) throw ParseError(1, "empty input");

    auto header = split_ws(line);
    if (header.size() != 6 || header[0] != "aag") {
        if (!header.empty() && header[0] == "aig")
            throw ParseError(1, "binary 'aig' format is not supported, use ASCII 'aag'");
        throw ParseError(1, "malformed header, expected 'aag M I L O A'");
    }
    Circuit c;
    c.max_var = parse_uint(header[1], 1, "M");
    unsigned num_in = parse_uint(header[2], 1, "I");
    unsigned num_latch = parse_uint(header[3], 1, "L");
    unsigned num_out = parse_uint(header[4], 1, "O");
    unsigned num_and = parse_uint(header[5], 1, "A");

    auto check_lit = [&](unsigned v, std::size_t where) {
        if (v / 2 > c.max_var)
            throw ParseError(where, "literal " + std::to_string(v) + " exceeds max variable " +
                                        std::to_string(c.max_var));
        return Literal(v);
    };

    auto read_data_line = [&](const char* what) {
        if (!rd.next(line)) throw ParseError(rd.line_no + 1, std::string("unexpected end of file in ") + what);
        return split_ws(line);
    };

    std::vector<unsigned char> defined(c.max_var + 1, 0);
    auto define = [&](Literal l, std::size_t where) {
        if (l.negated()) throw ParseError(where, "definition literal must be even");
        if (l.var() == 0) throw ParseError(where, "constant cannot be defined");
        if (defined[l.var()]) throw ParseError(where, "duplicate definition of variable " + std::to_string(l.var()));
        defined[l.var()] = 1;
    };

    for (unsigned i = 0; i < num_in; ++i) {
        auto toks = read_data_line("inputs");
        if (toks.size() != 1) throw ParseError(rd.line_no, "expected one input literal");
        Literal l = check_lit(parse_uint(toks[0], rd.line_no, "input literal"), rd.line_no);
        define(l, rd.line_no);
        c.inputs.push_back(l);
    }
    for (unsigned i = 0; i < num_latch; ++i) {
        auto toks = read_data_line("latches");
        if (toks.size() != 2) throw ParseError(rd.line_no, "expected 'state next' latch line");
        Literal s = check_lit(parse_uint(toks[0], rd.line_no, "latch literal"), rd.line_no);
        Literal n = check_lit(parse_uint(toks[1], rd.line_no, "latch next literal"), rd.line_no);
        define(s, rd.line_no);
        c.latches.push_back({s, n});
    }
    for (unsigned i = 0; i < num_out; ++i) {
        auto toks = read_data_line("outputs");
        if (toks.size() != 1) throw ParseError(rd.line_no, "expected one output literal");
        c.outputs.push_back(check_lit(parse_uint(toks[0], rd.line_no, "output literal"), rd.line_no));
    }
    for (unsigned i = 0; i < num_and; ++i) {
        auto toks = read_data_line("and gates");
        if (toks.size() != 3) throw ParseError(rd.line_no, "expected 'lhs rhs0 rhs1' gate line");
        Literal lhs = check_lit(parse_uint(toks[0], rd.line_no, "gate literal"), rd.line_no);
        Literal r0 = check_lit(parse_uint(toks[1], rd.line_no, "gate literal"), rd.line_no);
        Literal r1 = check_lit(parse_uint(toks[2], rd.line_no, "gate literal"), rd.line_no);
        define(lhs, rd.line_no);
        if (lhs.var() <= r0.var() || lhs.var() <= r1.var())
            throw ParseError(rd.line_no, "and gate " + std::to_string(lhs.value) +
                                             " does not dominate its operands");
        c.ands.push_back({lhs, r0, r1});
    }

    // Symbol table, then comment section.
    bool in_comments = false;
    while (rd.next(line)) {
        if (in_comments) {
            c.comments.emplace_back(line);
            continue;
        }
        if (line == "c") {
            in_comments = true;
            continue;
        }
        std::string_view body = line;
        if (body.empty()) throw ParseError(rd.line_no, "unexpected blank line in symbol table");
        char kind_ch = body[0];
        SymbolKind kind;
        std::size_t limit;
        switch (kind_ch) {
            case 'i': kind = SymbolKind::input; limit = c.inputs.size(); break;
            case 'l': kind = SymbolKind::latch; limit = c.latches.size(); break;
            case 'o': kind = SymbolKind::output; limit = c.outputs.size(); break;
            default: throw ParseError(rd.line_no, "unexpected symbol line '" + std::string(line) + "'");
        }
        body.remove_prefix(1);
        std::size_t sp = body.find(' ');
        if (sp == std::string_view::npos) throw ParseError(rd.line_no, "symbol line is missing a name");
        unsigned pos = parse_uint(body.substr(0, sp), rd.line_no, "symbol position");
        if (pos >= limit) throw ParseError(rd.line_no, "symbol position out of range");
        c.set_symbol(kind, pos, std::string(body.substr(sp + 1)));
    }

    for (unsigned v = 1; v <= c.max_var; ++v)
        if (!defined[v]) throw ParseError(rd.line_no, "variable " + std::to_string(v) + " is never defined");
    return c;
}

std::string write_aag(const Circuit& c) {
    std::ostringstream out;
    out << "aag " << c.max_var << ' ' << c.inputs.size() << ' ' << c.latches.size() << ' '
        << c.outputs.size() << ' ' << c.ands.size() << '\n';
    for (Literal in : c.inputs) out << in.value << '\n';
    for (const Latch& l : c.latches) out << l.state.value << ' ' << l.next.value << '\n';
    for (Literal o : c.outputs) out << o.value << '\n';
    for (const AndGate& g : c.ands) out << g.lhs.value << ' ' << g.rhs0.value << ' ' << g.rhs1.value << '\n';

    auto emit_symbols = [&](SymbolKind kind, char tag, std::size_t count) {
        for (std::size_t i = 0; i < count; ++i)
            if (const std::string* name = c.symbol(kind, i)) out << tag << i << ' ' << *name << '\n';
    };
    emit_symbols(SymbolKind::input, 'i', c.inputs.size());
    emit_symbols(SymbolKind::latch, 'l', c.latches.size());
    emit_symbols(SymbolKind::output, 'o', c.outputs.size());

    if (!c.comments.empty()) {
        out << "c\n";
        for (const std::string& line : c.comments) out << line << '\n';
    }
    return out.str();
}

Circuit read_aag_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_aag(buf.str());
}

void write_aag_file(const Circuit& c, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << write_aag(c);
}

ControlPartition partition_inputs(const Circuit& c) {
    ControlPartition p;
    for (std::size_t i = 0; i < c.inputs.size(); ++i) {
        const std::string* name = c.symbol(SymbolKind::input, i);
        if (!name)
            throw std::invalid_argument("input " + std::to_string(i) + " has no symbol name");
        if (name->rfind(kControllablePrefix, 0) == 0)
            p.controllable.push_back(i);
        else
            p.uncontrollable.push_back(i);
    }
    return p;
}

namespace {

// Parses "value [label]" where the bracketed label is optional.
std::pair<std::string_view, std::string> split_bracket_label(std::string_view v) {
    std::string label;
    std::size_t lb = v.find('[');
    if (lb != std::string_view::npos) {
        std::size_t rb = v.rfind(']');
        if (rb != std::string_view::npos && rb > lb)
            label = std::string(v.substr(lb + 1, rb - lb - 1));
        v = trim(v.substr(0, lb));
    }
    return {v, label};
}

}  // namespace

MetaInfo parse_meta(const Circuit& c, std::vector<std::string>* warnings) {
    MetaInfo m;
    std::size_t i = 0;
    for (; i < c.comments.size(); ++i)
        if (trim(c.comments[i]) == "#!SYNTCOMP") break;
    if (i == c.comments.size()) return m;

    for (++i; i < c.comments.size(); ++i) {
        std::size_t line = i + 1;  // 1-based within the comment section
        std::string_view raw = trim(c.comments[i]);
        if (raw == "#.") return m;
        std::size_t colon = raw.find(':');
        if (colon == std::string_view::npos)
            throw ParseError(line, "meta line has no ':' separator: '" + std::string(raw) + "'");
        std::string key{trim(raw.substr(0, colon))};
        std::string_view value = trim(raw.substr(colon + 1));
        if (key == "STATUS") {
            if (value == "realizable") m.status = MetaInfo::Status::realizable;
            else if (value == "unrealizable") m.status = MetaInfo::Status::unrealizable;
            else if (value == "unknown") m.status = MetaInfo::Status::unknown;
            else throw ParseError(line, "invalid STATUS value '" + std::string(value) + "'");
        } else if (key == "SOLVED_BY") {
            auto [frac, label] = split_bracket_label(value);
            std::size_t slash = frac.find('/');
            if (slash == std::string_view::npos)
                throw ParseError(line, "SOLVED_BY expects 'num/den [label]'");
            MetaInfo::SolvedBy sb;
            sb.numerator = parse_uint(trim(frac.substr(0, slash)), line, "SOLVED_BY numerator");
            sb.denominator = parse_uint(trim(frac.substr(slash + 1)), line, "SOLVED_BY denominator");
            sb.label = label;
            if (sb.denominator == 0 || sb.numerator > sb.denominator)
                throw ParseError(line, "SOLVED_BY fraction out of range");
            m.solved_by = sb;
        } else if (key == "SOLVED_IN") {
            auto [num, label] = split_bracket_label(value);
            char* end = nullptr;
            std::string tmp(num);
            double secs = std::strtod(tmp.c_str(), &end);
            if (end != tmp.c_str() + tmp.size() || tmp.empty())
                throw ParseError(line, "SOLVED_IN expects a number, got '" + tmp + "'");
            if (secs < 0) throw ParseError(line, "SOLVED_IN must be non-negative");
            if (secs > 0) m.solved_in = MetaInfo::SolvedIn{secs, label};
        } else if (key == "REF_SIZE") {
            unsigned size = parse_uint(value, line, "REF_SIZE value");
            if (size > 0) m.ref_size = size;
        } else {
            if (warnings)
                warnings->push_back("unknown meta property '" + key + "' ignored");
        }
    }
    throw ParseError(c.comments.size(), "meta paragraph is not terminated by '#.'");
}

std::vector<std::string> write_meta(const MetaInfo& m) {
    std::vector<std::string> lines;
    lines.push_back("#!SYNTCOMP");
    lines.push_back("STATUS : " + to_string(m.status));
    if (m.solved_by) {
        lines.push_back("SOLVED_BY : " + std::to_string(m.solved_by->numerator) + "/" +
                        std::to_string(m.solved_by->denominator) +
                        (m.solved_by->label.empty() ? "" : " [" + m.solved_by->label + "]"));
        char buf[64];
        if (m.solved_in) {
            std::snprintf(buf, sizeof buf, "%g", m.solved_in->seconds);
            lines.push_back(std::string("SOLVED_IN : ") + buf +
                            (m.solved_in->label.empty() ? "" : " [" + m.solved_in->label + "]"));
        } else {
            lines.push_back("SOLVED_IN : 0");
        }
        lines.push_back("REF_SIZE : " + std::to_string(m.ref_size.value_or(0)));
    } else {
        if (m.solved_in) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%g", m.solved_in->seconds);
            lines.push_back(std::string("SOLVED_IN : ") + buf +
                            (m.solved_in->label.empty() ? "" : " [" + m.solved_in->label + "]"));
        }
        if (m.ref_size) lines.push_back("REF_SIZE : " + std::to_string(*m.ref_size));
    }
    lines.push_back("#.");
    return lines;
}

Circuit with_meta(Circuit c, const MetaInfo& m) {
    std::vector<std::string> fresh = write_meta(m);
    std::vector<std::string> out;
    bool replaced = false;
    for (std::size_t i = 0; i < c.comments.size();) {
        if (!replaced && trim(c.comments[i]) == "#!SYNTCOMP") {
            while (i < c.comments.size() && trim(c.comments[i]) != "#.") ++i;
            if (i < c.comments.size()) ++i;  // skip the '#.'
            out.insert(out.end(), fresh.begin(), fresh.end());
            replaced = true;
        } else {
            out.push_back(c.comments[i]);
            ++i;
        }
    }
    if (!replaced) out.insert(out.end(), fresh.begin(), fresh.end());
    c.comments = std::move(out);
    return c;
}

}  // namespace aigsynt
