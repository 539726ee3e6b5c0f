// Vertex cover heuristic: local maximal matching, cross-level matching against
// burnt copies, then a maximum matching onto the cell's pins.

#include "hg/vcover.hpp"

#include <algorithm>
#include <map>

#include "hg/simplify.hpp"

namespace hg {

std::vector<std::pair<int, int>> greedy_maximal_matching(
    int vertex_count, const std::vector<std::pair<int, int>>& edges) {
    std::vector<char> used(vertex_count, 0);
    std::vector<std::pair<int, int>> m;
    for (const auto& [a, b] : edges) {
        if (a == b || used[a] || used[b]) continue;
        used[a] = used[b] = 1;
        m.emplace_back(a, b);
    }
    return m;
}

std::vector<std::pair<int, int>> bipartite_maximum_matching(
    int left_count, int right_count, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(left_count);
    for (const auto& [l, r] : edges) adj[l].push_back(r);
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    std::vector<int> match_right(right_count, -1), match_left(left_count, -1);
    std::vector<char> seen(right_count);
    auto augment = [&](auto&& self, int l) -> bool {
        for (int r : adj[l]) {
            if (seen[r]) continue;
            seen[r] = 1;
            if (match_right[r] < 0 || self(self, match_right[r])) {
                match_right[r] = l;
                match_left[l] = r;
                return true;
            }
        }
        return false;
    };
    for (int l = 0; l < left_count; ++l) {
        std::fill(seen.begin(), seen.end(), 0);
        augment(augment, l);
    }
    std::vector<std::pair<int, int>> m;
    for (int l = 0; l < left_count; ++l)
        if (match_left[l] >= 0) m.emplace_back(l, match_left[l]);
    return m;
}

namespace {

VertexPath prefixed(const std::string& instance, const VertexPath& rel) {
    VertexPath p;
    p.trail.reserve(rel.trail.size() + 1);
    p.trail.push_back(instance);
    p.trail.insert(p.trail.end(), rel.trail.begin(), rel.trail.end());
    p.local_name = rel.local_name;
    return p;
}

}  // namespace

VcResult hvc(const HierSpec& spec) {
    require_valid(spec);
    if (!is_simple(spec)) throw Error("not-simple", "heuristic requires a simple spec");
    if (!spec.cells.back().pins.empty())
        throw Error("root-has-pins", "heuristic requires a pinless root cell");

    int n = static_cast<int>(spec.cells.size());
    std::vector<VcLevel> levels(n);

    for (int i = 0; i < n; ++i) {
        const CellDef& cell = spec.cells[i];
        VcLevel& lev = levels[i];

        // 1(a): maximal matching on explicit-explicit edges, declaration order.
        std::map<std::string, char> in_mm;
        for (const auto& [a, b] : cell.edges) {
            bool a_exp = cell.pin_index(a) == 0, b_exp = cell.pin_index(b) == 0;
            if (!a_exp || !b_exp) continue;
            if (in_mm.count(a) || in_mm.count(b)) continue;
            in_mm[a] = in_mm[b] = 1;
            lev.MM.emplace_back(a, b);
        }

        // 1(b): leftovers.
        for (const auto& v : cell.explicit_vertices)
            if (!in_mm.count(v)) lev.V_l.push_back(v);

        // Per-instance copies of callee burnt partners with liveness.
        struct Copy {
            const Nonterminal* nt;
            const VcBurnt* b;
            std::vector<char> live;
        };
        std::vector<Copy> copies;
        for (const auto& nt : cell.nonterminals) {
            const VcBurnt& b = levels[nt.callee].burnt;
            copies.push_back({&nt, &b, std::vector<char>(b.partner_vertices.size(), 1)});
        }
        auto partner_slot = [](const Copy& c, const VertexPath& rel) {
            for (size_t j = 0; j < c.b->partner_vertices.size(); ++j)
                if (c.b->partner_vertices[j] == rel) return j;
            return c.b->partner_vertices.size();
        };

        // 1(c): match leftovers against live burnt partners, marked edges first.
        std::map<std::string, char> consumed_left;
        for (const auto& v : lev.V_l) {
            const VertexPath* hit = nullptr;
            Copy* hit_copy = nullptr;
            for (int pass = 0; pass < 2 && !hit; ++pass) {
                for (auto& cp : copies) {
                    const auto& edges = pass == 0 ? cp.b->marked_edges : cp.b->residual_edges;
                    for (const auto& [pin, rel] : edges) {
                        if (cp.nt->binding[pin - 1] != v) continue;
                        size_t j = partner_slot(cp, rel);
                        if (j == cp.b->partner_vertices.size() || !cp.live[j]) continue;
                        hit = &cp.b->partner_vertices[j];
                        hit_copy = &cp;
                        break;
                    }
                    if (hit) break;
                }
            }
            if (!hit) continue;
            size_t j = partner_slot(*hit_copy, *hit);
            hit_copy->live[j] = 0;
            consumed_left[v] = 1;
            lev.V_x.push_back(v);
            VertexPath full = prefixed(hit_copy->nt->instance, *hit);
            lev.V_y.push_back(full);
            lev.CM.emplace_back(v, full);
        }

        // 1(e)/(f): maximum matching of surviving vertices onto this cell's pins.
        std::vector<VertexPath> left;          // survivors, leftovers first
        std::vector<std::vector<int>> pin_adj;  // per left vertex, 0-based pin ids
        int p = static_cast<int>(cell.pins.size());
        for (const auto& v : lev.V_l) {
            if (consumed_left.count(v)) continue;
            std::vector<int> adj;
            for (const auto& [a, b] : cell.edges) {
                if (a == v && cell.pin_index(b) > 0) adj.push_back(cell.pin_index(b) - 1);
                if (b == v && cell.pin_index(a) > 0) adj.push_back(cell.pin_index(a) - 1);
            }
            VertexPath path;
            path.local_name = v;
            left.push_back(path);
            pin_adj.push_back(std::move(adj));
        }
        for (auto& cp : copies) {
            for (size_t j = 0; j < cp.b->partner_vertices.size(); ++j) {
                if (!cp.live[j]) continue;
                const VertexPath& rel = cp.b->partner_vertices[j];
                std::vector<int> adj;
                for (int pass = 0; pass < 2; ++pass) {
                    const auto& edges = pass == 0 ? cp.b->marked_edges : cp.b->residual_edges;
                    for (const auto& [pin, r] : edges) {
                        if (!(r == rel)) continue;
                        int q = cell.pin_index(cp.nt->binding[pin - 1]);
                        if (q > 0) adj.push_back(q - 1);
                    }
                }
                left.push_back(prefixed(cp.nt->instance, rel));
                pin_adj.push_back(std::move(adj));
            }
        }
        std::vector<std::pair<int, int>> bip_edges;
        for (size_t l = 0; l < left.size(); ++l)
            for (int q : pin_adj[l]) bip_edges.emplace_back(static_cast<int>(l), q);
        auto mxm = bipartite_maximum_matching(static_cast<int>(left.size()), p, bip_edges);
        std::vector<int> pin_partner(p, -1);
        std::vector<char> left_matched(left.size(), 0);
        for (const auto& [l, q] : mxm) {
            pin_partner[q] = l;
            left_matched[l] = 1;
        }

        // Burnt summary handed to callers.  Residual edges keep every pin
        // adjacency of a matched survivor, even to unmatched pins: an edge
        // through an unmatched pin still reaches the caller, and dropping it
        // loses coverage of that edge.
        VcBurnt& burnt = lev.burnt;
        for (int q = 0; q < p; ++q) {
            if (pin_partner[q] < 0) continue;
            burnt.pins.push_back(q + 1);
            burnt.marked_edges.emplace_back(q + 1, left[pin_partner[q]]);
        }
        for (size_t l = 0; l < left.size(); ++l) {
            if (!left_matched[l]) continue;
            burnt.partner_vertices.push_back(left[l]);
            for (int q : pin_adj[l])
                if (pin_partner[q] != static_cast<int>(l))
                    burnt.residual_edges.emplace_back(q + 1, left[l]);
        }

        // 1(g): cover size.
        lev.psi = BigInt(2) * static_cast<long long>(lev.MM.size()) +
                  BigInt(2) * static_cast<long long>(lev.CM.size());
        for (const auto& nt : cell.nonterminals) lev.psi += levels[nt.callee].psi;
    }

    VcResult res;
    res.psi = levels[n - 1].psi;
    res.solution = mirror_of(spec);
    for (int i = 0; i < n; ++i) {
        auto& sel = res.solution.cells[i].selected;
        for (const auto& [a, b] : levels[i].MM) {
            VertexPath pa, pb;
            pa.local_name = a;
            pb.local_name = b;
            sel.push_back(pa);
            sel.push_back(pb);
        }
        for (const auto& v : levels[i].V_x) {
            VertexPath pv;
            pv.local_name = v;
            sel.push_back(pv);
        }
        for (const auto& y : levels[i].V_y) sel.push_back(y);
    }
    res.levels = std::move(levels);
    return res;
}

BigInt min_maximal_matching_size(const HierSpec& spec) { return hvc(spec).psi / 2; }

}  // namespace hg
