// Hierarchical solutions: text format, mirroring, query, stream, flatten.

#include "hg/hsolution.hpp"

#include <algorithm>
#include <sstream>

namespace hg {

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

int cell_index_of(const HSolution& sol, const std::string& name) {
    for (size_t i = 0; i < sol.cells.size(); ++i)
        if (sol.cells[i].name == name) return static_cast<int>(i);
    return -1;
}

// Selection counts over the call tree, memoized per cell.
std::vector<BigInt> per_cell_selected(const HSolution& sol) {
    std::vector<BigInt> f(sol.cells.size());
    for (size_t i = 0; i < sol.cells.size(); ++i) {
        f[i] = sol.cells[i].selected.size();
        for (const auto& call : sol.cells[i].calls) f[i] += f[call.callee];
    }
    return f;
}

std::vector<BigInt> per_cell_tree_nodes(const HSolution& sol) {
    std::vector<BigInt> f(sol.cells.size());
    for (size_t i = 0; i < sol.cells.size(); ++i) {
        f[i] = 1;
        for (const auto& call : sol.cells[i].calls) f[i] += f[call.callee];
    }
    return f;
}

}  // namespace

HSolution parse_solution(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool saw_header = false;
    bool in_cell = false;
    HSolution sol;
    SolutionCell cell;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto tok = tokenize(raw);
        if (tok.empty()) continue;
        if (!saw_header) {
            if (tok.size() != 2 || tok[0] != "hsol" || tok[1] != "1")
                parse_fail(line_no, "expected header 'hsol 1'");
            saw_header = true;
            continue;
        }
        const std::string& kw = tok[0];
        if (!in_cell) {
            if (kw != "cell" || tok.size() != 2) parse_fail(line_no, "expected 'cell NAME'");
            if (cell_index_of(sol, tok[1]) >= 0)
                parse_fail(line_no, "duplicate cell '" + tok[1] + "'");
            cell.name = tok[1];
            in_cell = true;
        } else if (kw == "end") {
            if (tok.size() != 1) parse_fail(line_no, "unexpected tokens after 'end'");
            sol.cells.push_back(std::move(cell));
            cell = SolutionCell{};
            in_cell = false;
        } else if (kw == "select") {
            if (tok.size() != 2) parse_fail(line_no, "expected 'select PATH'");
            try {
                cell.selected.push_back(parse_path(tok[1]));
            } catch (const Error& e) {
                parse_fail(line_no, e.what());
            }
        } else if (kw == "nonterm") {
            if (tok.size() != 4 || tok[2] != ":")
                parse_fail(line_no, "expected 'nonterm INST : CELLNAME'");
            int callee = cell_index_of(sol, tok[3]);
            if (callee < 0) parse_fail(line_no, "call to undeclared cell '" + tok[3] + "'");
            cell.calls.push_back({tok[1], callee});
        } else {
            parse_fail(line_no, "unknown directive '" + kw + "'");
        }
    }
    if (!saw_header) parse_fail(line_no, "empty input, expected 'hsol 1'");
    if (in_cell) parse_fail(line_no, "unterminated cell '" + cell.name + "'");
    if (sol.cells.empty()) parse_fail(line_no, "no cells");
    return sol;
}

std::string serialize_solution(const HSolution& sol) {
    std::ostringstream out;
    out << "hsol 1\n";
    for (const auto& cell : sol.cells) {
        out << "\ncell " << cell.name << "\n";
        for (const auto& sel : cell.selected) out << "select " << sel.label() << "\n";
        for (const auto& call : cell.calls)
            out << "nonterm " << call.instance << " : " << sol.cells[call.callee].name << "\n";
        out << "end\n";
    }
    return out.str();
}

HSolution mirror_of(const HierSpec& spec) {
    HSolution sol;
    sol.cells.reserve(spec.cells.size());
    for (const auto& c : spec.cells) {
        SolutionCell sc;
        sc.name = c.name;
        for (const auto& nt : c.nonterminals) sc.calls.push_back({nt.instance, nt.callee});
        sol.cells.push_back(std::move(sc));
    }
    return sol;
}

bool query(const HSolution& sol, const HierSpec& spec, const VertexPath& v) {
    // Validate the path against the source spec first.
    {
        int cur = static_cast<int>(spec.cells.size()) - 1;
        for (const auto& seg : v.trail) {
            const CellDef& c = spec.cells[cur];
            auto it = std::find_if(c.nonterminals.begin(), c.nonterminals.end(),
                                   [&](const Nonterminal& n) { return n.instance == seg; });
            if (it == c.nonterminals.end())
                throw Error("bad-path",
                            "unknown instance '" + seg + "' in cell '" + c.name + "'");
            cur = it->callee;
        }
        if (!spec.cells[cur].is_terminal(v.local_name))
            throw Error("bad-path", "no terminal '" + v.local_name + "' in cell '" +
                                        spec.cells[cur].name + "'");
    }
    int cell = static_cast<int>(sol.cells.size()) - 1;
    for (size_t d = 0; d <= v.trail.size(); ++d) {
        VertexPath rel;
        rel.trail.assign(v.trail.begin() + d, v.trail.end());
        rel.local_name = v.local_name;
        const auto& sel = sol.cells[cell].selected;
        if (std::find(sel.begin(), sel.end(), rel) != sel.end()) return true;
        if (d == v.trail.size()) break;
        const auto& calls = sol.cells[cell].calls;
        auto it = std::find_if(calls.begin(), calls.end(), [&](const SolutionCall& sc) {
            return sc.instance == v.trail[d];
        });
        if (it == calls.end())
            throw Error("bad-path", "solution does not mirror instance '" + v.trail[d] + "'");
        cell = it->callee;
    }
    return false;
}

BigInt selected_count(const HSolution& sol) { return per_cell_selected(sol).back(); }

StreamResult stream(const HSolution& sol, const BigInt& node_limit,
                    const std::function<void(const VertexPath&)>& sink) {
    BigInt nodes = per_cell_tree_nodes(sol).back();
    if (nodes > node_limit)
        throw Error("limit-exceeded", "call tree has " + to_decimal(nodes) +
                                          " nodes, limit " + to_decimal(node_limit));
    auto sel_counts = per_cell_selected(sol);
    StreamResult res;
    res.emitted = 0;
    struct Frame {
        int cell;
        size_t next;
    };
    std::vector<Frame> st;
    std::vector<std::string> prefix;
    auto note_peak = [&] {
        size_t entries = st.size() + prefix.size();
        if (entries > res.peak_entries) res.peak_entries = entries;
    };
    auto emit_cell = [&](int ci) {
        for (const auto& rel : sol.cells[ci].selected) {
            VertexPath full;
            full.trail = prefix;
            full.trail.insert(full.trail.end(), rel.trail.begin(), rel.trail.end());
            full.local_name = rel.local_name;
            sink(full);
            res.emitted += 1;
        }
    };
    int root = static_cast<int>(sol.cells.size()) - 1;
    st.push_back({root, 0});
    note_peak();
    emit_cell(root);
    while (!st.empty()) {
        Frame& f = st.back();
        const auto& calls = sol.cells[f.cell].calls;
        size_t i = f.next;
        // skip subtrees that select nothing
        while (i < calls.size() && sel_counts[calls[i].callee] == 0) ++i;
        if (i < calls.size()) {
            f.next = i + 1;
            prefix.push_back(calls[i].instance);
            st.push_back({calls[i].callee, 0});
            note_peak();
            emit_cell(calls[i].callee);
        } else {
            st.pop_back();
            if (!st.empty()) prefix.pop_back();
        }
    }
    return res;
}

std::set<VertexPath> flatten(const HSolution& sol, const BigInt& vertex_limit) {
    BigInt count = selected_count(sol);
    if (count > vertex_limit)
        throw Error("limit-exceeded", "solution selects " + to_decimal(count) +
                                          " vertices, limit " + to_decimal(vertex_limit));
    std::set<VertexPath> out;
    // Node limit is unconstrained here: empty subtrees are pruned, so the walk
    // visits at most one call chain per selected vertex.
    stream(sol, BigInt(1) << 256, [&](const VertexPath& v) { out.insert(v); });
    return out;
}

}  // namespace hg
