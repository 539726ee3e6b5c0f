// Parsing, serialization, validation and size accounting for hierarchical specs.

#include "hg/specmodel.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace hg {

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

int CellDef::pin_index(const std::string& terminal) const {
    for (size_t i = 0; i < pins.size(); ++i)
        if (pins[i] == terminal) return static_cast<int>(i) + 1;
    return 0;
}

bool CellDef::is_terminal(const std::string& name) const {
    if (pin_index(name) != 0) return true;
    return std::find(explicit_vertices.begin(), explicit_vertices.end(), name) !=
           explicit_vertices.end();
}

std::optional<int> HierSpec::cell_index(const std::string& name) const {
    for (size_t i = 0; i < cells.size(); ++i)
        if (cells[i].name == name) return static_cast<int>(i);
    return std::nullopt;
}

std::string VertexPath::label() const {
    std::string out;
    for (const auto& seg : trail) {
        out += seg;
        out += '/';
    }
    out += local_name;
    return out;
}

VertexPath parse_path(const std::string& label) {
    VertexPath p;
    std::string seg;
    for (char c : label) {
        if (c == '/') {
            if (seg.empty()) throw Error("bad-path", "empty segment in '" + label + "'");
            p.trail.push_back(seg);
            seg.clear();
        } else {
            seg += c;
        }
    }
    if (seg.empty()) throw Error("bad-path", "empty final segment in '" + label + "'");
    p.local_name = seg;
    return p;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

[[noreturn]] void parse_fail(int line_no, const std::string& msg) {
    throw Error("parse-error", "line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

HierSpec parse_spec(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool saw_header = false;
    bool in_cell = false;
    HierSpec spec;
    CellDef cell;
    struct BindLine {
        std::string inst;
        int index;
        std::string target;
        int line;
    };
    std::vector<BindLine> binds;  // deferred so binds may precede their nonterm line

    auto finish_cell = [&]() {
        for (const auto& b : binds) {
            auto it = std::find_if(cell.nonterminals.begin(), cell.nonterminals.end(),
                                   [&](const Nonterminal& n) { return n.instance == b.inst; });
            if (it == cell.nonterminals.end())
                parse_fail(b.line, "bind names unknown instance '" + b.inst + "'");
            if (b.index < 1 || b.index > static_cast<int>(it->binding.size()))
                parse_fail(b.line, "pin index " + std::to_string(b.index) +
                                       " out of range for instance '" + b.inst + "'");
            std::string& slot = it->binding[b.index - 1];
            if (!slot.empty())
                parse_fail(b.line, "duplicate bind for instance '" + b.inst + "' pin " +
                                       std::to_string(b.index));
            slot = b.target;
        }
        binds.clear();
        spec.cells.push_back(std::move(cell));
        cell = CellDef{};
    };

    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto tok = tokenize(raw);
        if (tok.empty()) continue;
        if (!saw_header) {
            if (tok.size() != 2 || tok[0] != "hgs" || tok[1] != "1")
                parse_fail(line_no, "expected header 'hgs 1'");
            saw_header = true;
            continue;
        }
        const std::string& kw = tok[0];
        if (!in_cell) {
            if (kw != "cell" || tok.size() != 2) parse_fail(line_no, "expected 'cell NAME'");
            if (!is_identifier(tok[1])) parse_fail(line_no, "bad cell name '" + tok[1] + "'");
            if (spec.cell_index(tok[1])) parse_fail(line_no, "duplicate cell '" + tok[1] + "'");
            cell.name = tok[1];
            in_cell = true;
        } else if (kw == "end") {
            if (tok.size() != 1) parse_fail(line_no, "unexpected tokens after 'end'");
            finish_cell();
            in_cell = false;
        } else if (kw == "pin" || kw == "vertex") {
            if (tok.size() != 2 || !is_identifier(tok[1]))
                parse_fail(line_no, "expected '" + kw + " NAME'");
            (kw == "pin" ? cell.pins : cell.explicit_vertices).push_back(tok[1]);
        } else if (kw == "nonterm") {
            if (tok.size() != 4 || tok[2] != ":" || !is_identifier(tok[1]) ||
                !is_identifier(tok[3]))
                parse_fail(line_no, "expected 'nonterm INST : CELLNAME'");
            auto callee = spec.cell_index(tok[3]);
            if (!callee) parse_fail(line_no, "call to undeclared cell '" + tok[3] + "'");
            Nonterminal nt;
            nt.instance = tok[1];
            nt.callee = *callee;
            nt.binding.assign(spec.cells[*callee].pins.size(), std::string{});
            cell.nonterminals.push_back(std::move(nt));
        } else if (kw == "bind") {
            if (tok.size() != 4 || !is_identifier(tok[1]) || !is_identifier(tok[3]))
                parse_fail(line_no, "expected 'bind INST PININDEX TERMINAL'");
            int idx = 0;
            try {
                size_t used = 0;
                idx = std::stoi(tok[2], &used);
                if (used != tok[2].size()) parse_fail(line_no, "bad pin index '" + tok[2] + "'");
            } catch (const Error&) {
                throw;
            } catch (...) {
                parse_fail(line_no, "bad pin index '" + tok[2] + "'");
            }
            binds.push_back({tok[1], idx, tok[3], line_no});
        } else if (kw == "edge") {
            if (tok.size() != 3 || !is_identifier(tok[1]) || !is_identifier(tok[2]))
                parse_fail(line_no, "expected 'edge T1 T2'");
            cell.edges.emplace_back(tok[1], tok[2]);
        } else {
            parse_fail(line_no, "unknown directive '" + kw + "'");
        }
    }
    if (!saw_header) parse_fail(line_no, "empty input, expected 'hgs 1'");
    if (in_cell) parse_fail(line_no, "unterminated cell '" + cell.name + "'");
    if (spec.cells.empty()) parse_fail(line_no, "no cells");
    require_valid(spec);
    return spec;
}

std::string serialize_spec(const HierSpec& spec) {
    std::ostringstream out;
    out << "hgs 1\n";
    for (const auto& cell : spec.cells) {
        out << "\ncell " << cell.name << "\n";
        for (const auto& p : cell.pins) out << "pin " << p << "\n";
        for (const auto& v : cell.explicit_vertices) out << "vertex " << v << "\n";
        for (const auto& nt : cell.nonterminals)
            out << "nonterm " << nt.instance << " : " << spec.cells[nt.callee].name << "\n";
        for (const auto& nt : cell.nonterminals)
            for (size_t k = 0; k < nt.binding.size(); ++k)
                out << "bind " << nt.instance << " " << (k + 1) << " " << nt.binding[k] << "\n";
        for (const auto& [a, b] : cell.edges) out << "edge " << a << " " << b << "\n";
        out << "end\n";
    }
    return out.str();
}

std::vector<Violation> validate(const HierSpec& spec) {
    std::vector<Violation> out;
    if (spec.cells.empty()) {
        out.push_back({-1, "empty-spec", "specification has no cells"});
        return out;
    }
    std::unordered_set<std::string> cell_names;
    for (size_t i = 0; i < spec.cells.size(); ++i) {
        const CellDef& c = spec.cells[i];
        int ci = static_cast<int>(i);
        if (!is_identifier(c.name))
            out.push_back({ci, "bad-identifier", "cell name '" + c.name + "'"});
        if (!cell_names.insert(c.name).second)
            out.push_back({ci, "duplicate-cell", "cell name '" + c.name + "' reused"});
        std::unordered_set<std::string> names;
        auto check_name = [&](const std::string& n, const char* what) {
            if (!is_identifier(n))
                out.push_back({ci, "bad-identifier", std::string(what) + " '" + n + "'"});
            if (!names.insert(n).second)
                out.push_back({ci, "distinct-names", std::string(what) + " '" + n + "' reused"});
        };
        for (const auto& p : c.pins) check_name(p, "pin");
        for (const auto& v : c.explicit_vertices) check_name(v, "vertex");
        for (const auto& nt : c.nonterminals) check_name(nt.instance, "instance");
        std::set<std::pair<std::string, std::string>> seen_edges;
        for (const auto& [a, b] : c.edges) {
            if (!c.is_terminal(a) || !c.is_terminal(b)) {
                out.push_back({ci, "edge-endpoint",
                               "edge (" + a + ", " + b + ") has a non-terminal endpoint"});
                continue;
            }
            if (a == b) {
                out.push_back({ci, "self-loop", "at '" + a + "'"});
                continue;
            }
            auto key = std::minmax(a, b);
            if (!seen_edges.insert(key).second)
                out.push_back({ci, "duplicate-edge", "(" + a + ", " + b + ")"});
        }
        for (const auto& nt : c.nonterminals) {
            if (nt.callee < 0 || nt.callee >= ci) {
                out.push_back(
                    {ci, "call-order", "instance '" + nt.instance + "' violates cell order"});
                continue;
            }
            const CellDef& callee = spec.cells[nt.callee];
            if (nt.binding.size() != callee.pins.size())
                out.push_back({ci, "binding-total",
                               "instance '" + nt.instance + "' binds " +
                                   std::to_string(nt.binding.size()) + " of " +
                                   std::to_string(callee.pins.size()) + " pins"});
            std::unordered_set<std::string> targets;
            for (size_t k = 0; k < nt.binding.size(); ++k) {
                const std::string& t = nt.binding[k];
                if (t.empty()) {
                    out.push_back({ci, "binding-total", "instance '" + nt.instance + "' pin " +
                                                            std::to_string(k + 1) + " unbound"});
                    continue;
                }
                if (!c.is_terminal(t))
                    out.push_back({ci, "binding-target",
                                   "instance '" + nt.instance + "' pin " + std::to_string(k + 1) +
                                       " bound to non-terminal '" + t + "'"});
                if (!targets.insert(t).second)
                    out.push_back({ci, "binding-injective",
                                   "instance '" + nt.instance + "' target '" + t + "' reused"});
            }
        }
    }
    std::vector<char> reach(spec.cells.size(), 0);
    std::vector<int> stack = {static_cast<int>(spec.cells.size()) - 1};
    reach.back() = 1;
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (const auto& nt : spec.cells[i].nonterminals)
            if (nt.callee >= 0 && nt.callee < i && !reach[nt.callee]) {
                reach[nt.callee] = 1;
                stack.push_back(nt.callee);
            }
    }
    for (size_t i = 0; i < spec.cells.size(); ++i)
        if (!reach[i])
            out.push_back({static_cast<int>(i), "unreachable-cell",
                           "cell '" + spec.cells[i].name + "' is never called"});
    return out;
}

void require_valid(const HierSpec& spec) {
    auto v = validate(spec);
    if (v.empty()) return;
    std::string msg = v[0].rule + " (cell " + std::to_string(v[0].cell) + "): " + v[0].detail;
    if (v.size() > 1) msg += " [+" + std::to_string(v.size() - 1) + " more]";
    throw Error("invalid-spec", msg);
}

SpecStats stats(const HierSpec& spec) {
    SpecStats st;
    size_t n = spec.cells.size();
    st.per_cell.resize(n);
    st.pin_degree.resize(n);
    st.max_degree = 0;
    for (size_t i = 0; i < n; ++i) {
        const CellDef& c = spec.cells[i];
        CellStats& cs = st.per_cell[i];
        cs.p = static_cast<long long>(c.pins.size());
        cs.r = static_cast<long long>(c.nonterminals.size());
        cs.n = cs.p + static_cast<long long>(c.explicit_vertices.size()) + cs.r;
        long long bind_edges = 0;
        for (const auto& nt : c.nonterminals)
            bind_edges += static_cast<long long>(spec.cells[nt.callee].pins.size());
        cs.m = static_cast<long long>(c.edges.size()) + bind_edges;
        cs.expansion_vertices = cs.n - cs.r;
        cs.expansion_edges = static_cast<long long>(c.edges.size());
        for (const auto& nt : c.nonterminals) {
            cs.expansion_vertices += st.per_cell[nt.callee].expansion_vertices -
                                     static_cast<long long>(spec.cells[nt.callee].pins.size());
            cs.expansion_edges += st.per_cell[nt.callee].expansion_edges;
        }
        st.N += cs.n;
        st.M += cs.m;
        // Realized degree of each terminal inside this cell's own expansion.
        std::unordered_map<std::string, BigInt> deg;
        for (const auto& [a, b] : c.edges) {
            deg[a] += 1;
            deg[b] += 1;
        }
        for (const auto& nt : c.nonterminals)
            for (size_t k = 0; k < nt.binding.size(); ++k)
                deg[nt.binding[k]] += st.pin_degree[nt.callee][k];
        st.pin_degree[i].resize(c.pins.size());
        for (size_t k = 0; k < c.pins.size(); ++k) st.pin_degree[i][k] = deg[c.pins[k]];
        for (const auto& v : c.explicit_vertices)
            if (deg[v] > st.max_degree) st.max_degree = deg[v];
    }
    for (const auto& d : st.pin_degree[n - 1])
        if (d > st.max_degree) st.max_degree = d;  // root pins are ordinary vertices
    st.size = st.N + st.M;
    st.expansion_vertices = st.per_cell.back().expansion_vertices;
    st.expansion_edges = st.per_cell.back().expansion_edges;
    return st;
}

BigInt hierarchy_tree_size(const HierSpec& spec) {
    std::vector<BigInt> f(spec.cells.size());
    for (size_t i = 0; i < spec.cells.size(); ++i) {
        f[i] = 1;
        for (const auto& nt : spec.cells[i].nonterminals) f[i] += f[nt.callee];
    }
    return f.back();
}

namespace {

HierarchyNode build_tree(const HierSpec& spec, int cell, const std::string& inst) {
    HierarchyNode node{inst, cell, {}};
    for (const auto& nt : spec.cells[cell].nonterminals)
        node.children.push_back(build_tree(spec, nt.callee, nt.instance));
    return node;
}

}  // namespace

HierarchyNode hierarchy_tree(const HierSpec& spec, const BigInt& node_limit) {
    BigInt count = hierarchy_tree_size(spec);
    if (count > node_limit)
        throw Error("limit-exceeded", "hierarchy tree has " + to_decimal(count) +
                                          " nodes, limit " + to_decimal(node_limit));
    return build_tree(spec, static_cast<int>(spec.cells.size()) - 1, "");
}

}  // namespace hg
