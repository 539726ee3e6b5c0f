// Max cut heuristics: greedy placement flat-side, super-node burnt graphs
// hierarchically.

#include "hg/maxcut.hpp"

#include <algorithm>

#include "hg/simplify.hpp"

namespace hg {

FlatCutResult fmax_cut(const FlatGraph& g, const std::vector<VertexPath>& order) {
    std::map<VertexPath, int> side;  // 1 or 2 once placed
    for (const auto& v : order) {
        BigInt c1 = 0, c2 = 0;
        for (const auto& [a, b] : g.edges) {
            const VertexPath* other = nullptr;
            if (a == v) other = &b;
            else if (b == v) other = &a;
            if (!other) continue;
            auto it = side.find(*other);
            if (it == side.end()) continue;
            (it->second == 1 ? c1 : c2) += 1;
        }
        side[v] = c1 <= c2 ? 1 : 2;
    }
    FlatCutResult res;
    res.cut_size = 0;
    for (const auto& [v, s] : side) (s == 1 ? res.side1 : res.side2).insert(v);
    for (const auto& [a, b] : g.edges) {
        auto ia = side.find(a), ib = side.find(b);
        if (ia != side.end() && ib != side.end() && ia->second != ib->second)
            res.cut_size += 1;
    }
    return res;
}

CutResult hmax_cut(const HierSpec& spec) {
    require_valid(spec);
    if (!is_simple(spec)) throw Error("not-simple", "heuristic requires a simple spec");
    if (!spec.cells.back().pins.empty())
        throw Error("root-has-pins", "heuristic requires a pinless root cell");

    int n = static_cast<int>(spec.cells.size());
    std::vector<CutLevel> levels(n);

    for (int i = 0; i < n; ++i) {
        const CellDef& cell = spec.cells[i];
        CutLevel& lev = levels[i];

        std::map<std::string, char> call_adjacent;
        for (const auto& nt : cell.nonterminals)
            for (const auto& target : nt.binding)
                if (cell.pin_index(target) == 0) call_adjacent[target] = 1;
        for (const auto& v : cell.explicit_vertices)
            (call_adjacent.count(v) ? lev.B : lev.A).push_back(v);

        // 1(a)/(b): greedy cut of the subgraph induced on A.
        std::map<std::string, int> side;
        {
            FlatGraph ga;
            std::vector<VertexPath> order;
            std::map<std::string, char> in_a;
            for (const auto& v : lev.A) in_a[v] = 1;
            for (const auto& v : lev.A) {
                VertexPath p;
                p.local_name = v;
                ga.vertices.push_back(p);
                order.push_back(p);
            }
            for (const auto& [a, b] : cell.edges)
                if (in_a.count(a) && in_a.count(b)) {
                    VertexPath pa, pb;
                    pa.local_name = a;
                    pb.local_name = b;
                    ga.edges.emplace_back(pa, pb);
                }
            FlatCutResult fr = fmax_cut(ga, order);
            lev.E1 = fr.cut_size;
            for (const auto& v : fr.side1) {
                side[v.local_name] = 1;
                lev.X1.push_back(v.local_name);
            }
            for (const auto& v : fr.side2) {
                side[v.local_name] = 2;
                lev.X2.push_back(v.local_name);
            }
        }

        // 1(c): place call-adjacent vertices using callee pin weights.  The
        // local count looks at every already placed explicit neighbour, X or Y,
        // so each local edge is charged exactly once, at its later endpoint.
        lev.E2 = 0;
        for (const auto& v : lev.B) {
            std::array<BigInt, 2> cnt = {BigInt(0), BigInt(0)};
            for (const auto& [a, b] : cell.edges) {
                const std::string* other = nullptr;
                if (a == v) other = &b;
                else if (b == v) other = &a;
                if (!other) continue;
                auto it = side.find(*other);
                if (it != side.end()) cnt[it->second - 1] += 1;
            }
            for (const auto& nt : cell.nonterminals) {
                const CutBurnt& cb = levels[nt.callee].burnt;
                for (size_t k = 0; k < nt.binding.size(); ++k)
                    if (nt.binding[k] == v) {
                        cnt[0] += cb.pin_wt[k][0];
                        cnt[1] += cb.pin_wt[k][1];
                    }
            }
            lev.count_v[v] = cnt;
            if (cnt[0] >= cnt[1]) {
                side[v] = 2;
                lev.Y2.push_back(v);
                lev.E2 += cnt[0];
            } else {
                side[v] = 1;
                lev.Y1.push_back(v);
                lev.E2 += cnt[1];
            }
        }

        // 1(d): pin weights from the final placement.
        lev.burnt.pin_wt.assign(cell.pins.size(), {BigInt(0), BigInt(0)});
        for (size_t q = 0; q < cell.pins.size(); ++q) {
            const std::string& pin = cell.pins[q];
            for (const auto& [a, b] : cell.edges) {
                const std::string* other = nullptr;
                if (a == pin) other = &b;
                else if (b == pin) other = &a;
                if (!other) continue;
                auto it = side.find(*other);
                if (it != side.end()) lev.burnt.pin_wt[q][it->second - 1] += 1;
            }
            for (const auto& nt : cell.nonterminals) {
                const CutBurnt& cb = levels[nt.callee].burnt;
                for (size_t k = 0; k < nt.binding.size(); ++k)
                    if (nt.binding[k] == pin) {
                        lev.burnt.pin_wt[q][0] += cb.pin_wt[k][0];
                        lev.burnt.pin_wt[q][1] += cb.pin_wt[k][1];
                    }
            }
        }

        // 1(e)
        lev.E_total = lev.E1 + lev.E2;
        for (const auto& nt : cell.nonterminals) lev.E_total += levels[nt.callee].E_total;
    }

    CutResult res;
    res.E_n = levels[n - 1].E_total;
    res.solution = mirror_of(spec);
    for (int i = 0; i < n; ++i) {
        auto& sel = res.solution.cells[i].selected;
        for (const auto& v : levels[i].X1) {
            VertexPath p;
            p.local_name = v;
            sel.push_back(p);
        }
        for (const auto& v : levels[i].Y1) {
            VertexPath p;
            p.local_name = v;
            sel.push_back(p);
        }
    }
    res.levels = std::move(levels);
    return res;
}

}  // namespace hg
