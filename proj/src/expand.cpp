// Recursive macro substitution building the labeled flat multigraph.

#include "hg/expand.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace hg {

namespace {

struct Expander {
    const HierSpec& spec;
    FlatGraph out;

    // Terminal name -> expansion label; pins of instantiated cells resolve to
    // the caller-side label they were merged with.
    VertexPath term_path(const std::vector<std::string>& prefix,
                         const std::map<std::string, VertexPath>* sub,
                         const std::string& t) const {
        if (sub) {
            auto it = sub->find(t);
            if (it != sub->end()) return it->second;
        }
        return VertexPath{prefix, t};
    }

    void walk(int cell, std::vector<std::string>& prefix,
              const std::map<std::string, VertexPath>* sub) {
        const CellDef& c = spec.cells[cell];
        if (!sub)  // root pins survive as ordinary vertices
            for (const auto& p : c.pins) out.vertices.push_back({prefix, p});
        for (const auto& v : c.explicit_vertices) out.vertices.push_back({prefix, v});
        for (const auto& [a, b] : c.edges)
            out.edges.emplace_back(term_path(prefix, sub, a), term_path(prefix, sub, b));
        for (const auto& nt : c.nonterminals) {
            const CellDef& callee = spec.cells[nt.callee];
            std::map<std::string, VertexPath> child;
            for (size_t k = 0; k < nt.binding.size(); ++k)
                child[callee.pins[k]] = term_path(prefix, sub, nt.binding[k]);
            prefix.push_back(nt.instance);
            walk(nt.callee, prefix, &child);
            prefix.pop_back();
        }
    }
};

}  // namespace

FlatGraph expand(const HierSpec& spec, const BigInt& vertex_limit) {
    require_valid(spec);
    SpecStats st = stats(spec);
    if (st.expansion_vertices > vertex_limit)
        throw Error("limit-exceeded", "expansion has " + to_decimal(st.expansion_vertices) +
                                          " vertices, limit " + to_decimal(vertex_limit));
    Expander ex{spec, {}};
    std::vector<std::string> prefix;
    ex.walk(static_cast<int>(spec.cells.size()) - 1, prefix, nullptr);
    return std::move(ex.out);
}

ResolvedVertex resolve(const HierSpec& spec, const VertexPath& path) {
    int cur = static_cast<int>(spec.cells.size()) - 1;
    for (const auto& seg : path.trail) {
        const CellDef& c = spec.cells[cur];
        auto it = std::find_if(c.nonterminals.begin(), c.nonterminals.end(),
                               [&](const Nonterminal& n) { return n.instance == seg; });
        if (it == c.nonterminals.end())
            throw Error("bad-path", "unknown instance '" + seg + "' in cell '" + c.name + "'");
        cur = it->callee;
    }
    const CellDef& c = spec.cells[cur];
    if (c.pin_index(path.local_name) != 0) return {cur, true};
    if (std::find(c.explicit_vertices.begin(), c.explicit_vertices.end(), path.local_name) !=
        c.explicit_vertices.end())
        return {cur, false};
    throw Error("bad-path", "no terminal '" + path.local_name + "' in cell '" + c.name + "'");
}

std::string export_flat_graph(const FlatGraph& g) {
    std::ostringstream out;
    for (const auto& v : g.vertices) out << "v " << v.label() << "\n";
    for (const auto& [a, b] : g.edges) out << "e " << a.label() << " " << b.label() << "\n";
    return out.str();
}

}  // namespace hg
