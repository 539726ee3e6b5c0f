// Independent set heuristic: greedy local picks, removal marks propagated
// through pins.

#include "hg/indset.hpp"

#include <map>

#include "hg/simplify.hpp"

namespace hg {

std::set<VertexPath> find_set(const FlatGraph& g, const std::vector<VertexPath>& order) {
    std::set<VertexPath> removed, chosen;
    for (const auto& v : order) {
        if (removed.count(v)) continue;
        chosen.insert(v);
        removed.insert(v);
        for (const auto& [a, b] : g.edges) {
            if (a == v) removed.insert(b);
            if (b == v) removed.insert(a);
        }
    }
    return chosen;
}

SetResult hind_set(const HierSpec& spec) {
    require_valid(spec);
    if (!is_simple(spec)) throw Error("not-simple", "heuristic requires a simple spec");
    if (!spec.cells.back().pins.empty())
        throw Error("root-has-pins", "heuristic requires a pinless root cell");

    int n = static_cast<int>(spec.cells.size());
    std::vector<SetLevel> levels(n);

    for (int i = 0; i < n; ++i) {
        const CellDef& cell = spec.cells[i];
        SetLevel& lev = levels[i];
        lev.A = cell.explicit_vertices;

        // 1(a): only vertices with no already-taken neighbour below are eligible.
        std::map<std::string, char> blocked;
        for (const auto& nt : cell.nonterminals) {
            const SetBurnt& sb = levels[nt.callee].burnt;
            for (size_t k = 0; k < nt.binding.size(); ++k)
                if (sb.removed[k] && cell.pin_index(nt.binding[k]) == 0)
                    blocked[nt.binding[k]] = 1;
        }
        for (const auto& v : lev.A)
            if (!blocked.count(v)) lev.B_set.push_back(v);

        // 1(b): greedy independent set on the induced subgraph.
        {
            FlatGraph gb;
            std::vector<VertexPath> order;
            std::map<std::string, char> in_b;
            for (const auto& v : lev.B_set) in_b[v] = 1;
            for (const auto& v : lev.B_set) {
                VertexPath p;
                p.local_name = v;
                gb.vertices.push_back(p);
                order.push_back(p);
            }
            for (const auto& [a, b] : cell.edges)
                if (in_b.count(a) && in_b.count(b)) {
                    VertexPath pa, pb;
                    pa.local_name = a;
                    pb.local_name = b;
                    gb.edges.emplace_back(pa, pb);
                }
            for (const auto& p : find_set(gb, order)) lev.X.push_back(p.local_name);
        }
        std::map<std::string, char> in_x;
        for (const auto& v : lev.X) in_x[v] = 1;

        // 1(c)
        lev.size_V = static_cast<long long>(lev.X.size());
        for (const auto& nt : cell.nonterminals) lev.size_V += levels[nt.callee].size_V;

        // 1(d): mark pins whose expanded neighbourhood gained a chosen vertex.
        lev.burnt.removed.assign(cell.pins.size(), false);
        for (size_t q = 0; q < cell.pins.size(); ++q) {
            const std::string& pin = cell.pins[q];
            bool rem = false;
            for (const auto& [a, b] : cell.edges) {
                if (a == pin && in_x.count(b)) rem = true;
                if (b == pin && in_x.count(a)) rem = true;
            }
            for (const auto& nt : cell.nonterminals) {
                const SetBurnt& sb = levels[nt.callee].burnt;
                for (size_t k = 0; k < nt.binding.size(); ++k)
                    if (sb.removed[k] && nt.binding[k] == pin) rem = true;
            }
            lev.burnt.removed[q] = rem;
        }
    }

    SetResult res;
    res.size_V = levels[n - 1].size_V;
    res.B = stats(spec).max_degree;
    res.solution = mirror_of(spec);
    for (int i = 0; i < n; ++i) {
        auto& sel = res.solution.cells[i].selected;
        for (const auto& v : levels[i].X) {
            VertexPath p;
            p.local_name = v;
            sel.push_back(p);
        }
    }
    res.levels = std::move(levels);
    return res;
}

}  // namespace hg
