// Fixtures, seeded generators, and brute-force ground truth.

#include "hg/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>

#include "hg/simplify.hpp"

namespace hg {

namespace {

CellDef make_cell(std::string name, std::vector<std::string> pins,
                  std::vector<std::string> verts,
                  std::vector<Nonterminal> calls,
                  std::vector<std::pair<std::string, std::string>> edges) {
    CellDef c;
    c.name = std::move(name);
    c.pins = std::move(pins);
    c.explicit_vertices = std::move(verts);
    c.nonterminals = std::move(calls);
    c.edges = std::move(edges);
    return c;
}

}  // namespace

HierSpec chain_fixture(int k) {
    if (k < 1) throw Error("bad-argument", "chain_fixture needs k >= 1");
    HierSpec s;
    if (k == 1) {
        s.cells.push_back(make_cell("C1", {}, {"u", "v"}, {}, {{"u", "v"}}));
        return s;
    }
    s.cells.push_back(make_cell("C1", {"a"}, {"u", "v"}, {}, {{"a", "u"}, {"u", "v"}}));
    for (int i = 2; i < k; ++i)
        s.cells.push_back(make_cell("C" + std::to_string(i), {"a"}, {"u", "v"},
                                    {{"I", i - 2, {"v"}}}, {{"a", "u"}, {"u", "v"}}));
    s.cells.push_back(
        make_cell("C" + std::to_string(k), {}, {"u", "v"}, {{"I", k - 2, {"v"}}}, {{"u", "v"}}));
    return s;
}

HierSpec tower_fixture(int k) {
    if (k < 1) throw Error("bad-argument", "tower_fixture needs k >= 1");
    HierSpec s;
    if (k == 1) {
        s.cells.push_back(make_cell("T1", {}, {"u", "v"}, {}, {{"u", "v"}}));
        return s;
    }
    s.cells.push_back(make_cell("T1", {"a"}, {"u", "v"}, {}, {{"a", "u"}, {"u", "v"}}));
    for (int i = 2; i < k; ++i)
        s.cells.push_back(make_cell("T" + std::to_string(i), {"a"}, {"u", "v"},
                                    {{"I1", i - 2, {"u"}}, {"I2", i - 2, {"v"}}},
                                    {{"a", "u"}, {"u", "v"}}));
    s.cells.push_back(make_cell("T" + std::to_string(k), {}, {"u", "v"},
                                {{"I1", k - 2, {"u"}}, {"I2", k - 2, {"v"}}}, {{"u", "v"}}));
    return s;
}

HierSpec pinpair_fixture() {
    HierSpec s;
    s.cells.push_back(
        make_cell("G1", {"p", "q"}, {"w"}, {}, {{"p", "w"}, {"w", "q"}, {"p", "q"}}));
    s.cells.push_back(make_cell("G2", {"c", "d"}, {}, {{"I", 0, {"c", "d"}}}, {}));
    s.cells.push_back(make_cell("G3", {}, {"x", "y"}, {{"J", 1, {"x", "y"}}}, {}));
    return s;
}

HierSpec multi_fixture() {
    HierSpec s;
    s.cells.push_back(
        make_cell("G1", {"p", "q"}, {"w"}, {}, {{"p", "q"}, {"p", "w"}, {"w", "q"}}));
    s.cells.push_back(
        make_cell("G2", {}, {"u", "v"}, {{"I", 0, {"u", "v"}}}, {{"u", "v"}}));
    return s;
}

namespace {

// One generation attempt; callers retry with a perturbed seed until the
// candidate validates and its expansion fits the budget.
HierSpec spec_candidate(Rng& rng, bool allow_pin_edges) {
    int ncells = rng.range(1, 6);
    HierSpec spec;
    for (int i = 0; i < ncells; ++i) {
        bool is_root = (i == ncells - 1);
        CellDef c;
        c.name = "G" + std::to_string(i + 1);
        int npins = is_root ? 0 : rng.range(0, 3);
        for (int p = 1; p <= npins; ++p) c.pins.push_back("p" + std::to_string(p));
        int nexp = is_root ? rng.range(3, 6) : rng.range(1, 6);
        for (int v = 1; v <= nexp; ++v)
            c.explicit_vertices.push_back("x" + std::to_string(v));
        std::vector<std::string> terms = c.pins;
        terms.insert(terms.end(), c.explicit_vertices.begin(), c.explicit_vertices.end());
        if (i > 0) {
            int ncalls = rng.range(0, 3);
            for (int t = 0; t < ncalls; ++t) {
                int callee = static_cast<int>(rng.below(i));
                size_t need = spec.cells[callee].pins.size();
                if (need > terms.size()) continue;
                std::vector<int> idx(terms.size());
                std::iota(idx.begin(), idx.end(), 0);
                Nonterminal nt;
                nt.instance = "n" + std::to_string(c.nonterminals.size() + 1);
                nt.callee = callee;
                for (size_t b = 0; b < need; ++b) {
                    size_t pick = b + rng.below(idx.size() - b);
                    std::swap(idx[b], idx[pick]);
                    nt.binding.push_back(terms[idx[b]]);
                }
                c.nonterminals.push_back(std::move(nt));
            }
        }
        std::vector<std::pair<std::string, std::string>> pairs;
        for (size_t a = 0; a < terms.size(); ++a)
            for (size_t b = a + 1; b < terms.size(); ++b) {
                bool both_pins = a < c.pins.size() && b < c.pins.size();
                if (both_pins && !allow_pin_edges) continue;
                pairs.emplace_back(terms[a], terms[b]);
            }
        int ne = pairs.empty() ? 0 : rng.range(0, std::min<int>(pairs.size(), 8));
        for (int e = 0; e < ne; ++e) {
            size_t pick = e + rng.below(pairs.size() - e);
            std::swap(pairs[e], pairs[pick]);
            c.edges.push_back(pairs[e]);
        }
        spec.cells.push_back(std::move(c));
    }
    // patch reachability with extra root calls (root always has >= 3 terminals)
    std::vector<char> reach(ncells, 0);
    std::vector<int> stack = {ncells - 1};
    reach[ncells - 1] = 1;
    while (!stack.empty()) {
        int c = stack.back();
        stack.pop_back();
        for (const auto& nt : spec.cells[c].nonterminals)
            if (!reach[nt.callee]) {
                reach[nt.callee] = 1;
                stack.push_back(nt.callee);
            }
    }
    CellDef& root = spec.cells.back();
    for (int j = ncells - 2; j >= 0; --j) {
        if (reach[j]) continue;
        Nonterminal nt;
        nt.instance = "n" + std::to_string(root.nonterminals.size() + 1);
        nt.callee = j;
        for (size_t b = 0; b < spec.cells[j].pins.size(); ++b)
            nt.binding.push_back(root.explicit_vertices[b]);
        root.nonterminals.push_back(std::move(nt));
        reach[j] = 1;
        std::vector<int> st2 = {j};
        while (!st2.empty()) {
            int c = st2.back();
            st2.pop_back();
            for (const auto& sub : spec.cells[c].nonterminals)
                if (!reach[sub.callee]) {
                    reach[sub.callee] = 1;
                    st2.push_back(sub.callee);
                }
        }
    }
    return spec;
}

bool spec_has_pin_pin_edge(const HierSpec& spec) {
    for (const auto& c : spec.cells)
        for (const auto& [a, b] : c.edges)
            if (c.pin_index(a) > 0 && c.pin_index(b) > 0) return true;
    return false;
}

}  // namespace

HierSpec random_simple_spec(uint64_t seed, long long max_expansion) {
    for (uint64_t attempt = 0;; ++attempt) {
        Rng rng(seed + attempt * 0x9e3779b97f4a7c15ULL);
        HierSpec spec = spec_candidate(rng, false);
        if (!validate(spec).empty()) continue;
        if (stats(spec).expansion_vertices > max_expansion) continue;
        return spec;
    }
}

HierSpec random_pin_edge_spec(uint64_t seed, long long max_expansion) {
    for (uint64_t attempt = 0;; ++attempt) {
        Rng rng(seed + attempt * 0x9e3779b97f4a7c15ULL);
        HierSpec spec = spec_candidate(rng, true);
        if (!validate(spec).empty()) continue;
        if (!spec_has_pin_pin_edge(spec)) continue;
        if (has_simplification_collisions(spec)) continue;
        if (stats(spec).expansion_vertices > max_expansion) continue;
        return spec;
    }
}

HierFormula random_formula(uint64_t seed, long long max_clauses) {
    for (uint64_t attempt = 0;; ++attempt) {
        Rng rng(seed + attempt * 0x9e3779b97f4a7c15ULL);
        int ncells = rng.range(1, 4);
        HierFormula f;
        for (int i = 0; i < ncells; ++i) {
            bool is_root = (i == ncells - 1);
            FormulaCell c;
            c.name = "F" + std::to_string(i + 1);
            int nparams = is_root ? 0 : rng.range(0, 3);
            for (int p = 1; p <= nparams; ++p) c.params.push_back("q" + std::to_string(p));
            int nlocals = is_root ? rng.range(3, 4) : rng.range(1, 4);
            for (int v = 1; v <= nlocals; ++v) c.locals.push_back("x" + std::to_string(v));
            std::vector<std::string> vars = c.params;
            vars.insert(vars.end(), c.locals.begin(), c.locals.end());
            int nclauses = rng.range(1, 5);
            for (int j = 0; j < nclauses; ++j) {
                Clause cl;
                int width = rng.range(1, 3);
                for (int l = 0; l < width; ++l)
                    cl.lits.push_back({vars[rng.below(vars.size())], rng.below(2) == 1});
                c.clauses.push_back(std::move(cl));
            }
            if (i > 0) {
                int ncalls = rng.range(0, 3);
                for (int t = 0; t < ncalls; ++t) {
                    int callee = static_cast<int>(rng.below(i));
                    size_t need = f.cells[callee].params.size();
                    if (need > vars.size()) continue;
                    FormulaCall call;
                    call.callee = callee;
                    std::vector<int> idx(vars.size());
                    std::iota(idx.begin(), idx.end(), 0);
                    for (size_t b = 0; b < need; ++b) {
                        size_t pick = b + rng.below(idx.size() - b);
                        std::swap(idx[b], idx[pick]);
                        call.args.push_back(vars[idx[b]]);
                    }
                    c.calls.push_back(std::move(call));
                }
            }
            f.cells.push_back(std::move(c));
        }
        // root reaches everything; positional instance names last
        std::vector<char> reach(ncells, 0);
        std::vector<int> stack = {ncells - 1};
        reach[ncells - 1] = 1;
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            for (const auto& call : f.cells[c].calls)
                if (!reach[call.callee]) {
                    reach[call.callee] = 1;
                    stack.push_back(call.callee);
                }
        }
        FormulaCell& root = f.cells.back();
        bool ok = true;
        for (int j = ncells - 2; j >= 0; --j) {
            if (reach[j]) continue;
            size_t need = f.cells[j].params.size();
            if (need > root.locals.size()) {
                ok = false;
                break;
            }
            FormulaCall call;
            call.callee = j;
            for (size_t b = 0; b < need; ++b) call.args.push_back(root.locals[b]);
            root.calls.push_back(std::move(call));
            reach[j] = 1;
            std::vector<int> st2 = {j};
            while (!st2.empty()) {
                int c = st2.back();
                st2.pop_back();
                for (const auto& sub : f.cells[c].calls)
                    if (!reach[sub.callee]) {
                        reach[sub.callee] = 1;
                        st2.push_back(sub.callee);
                    }
            }
        }
        if (!ok) continue;
        for (auto& cell : f.cells)
            for (size_t t = 0; t < cell.calls.size(); ++t)
                cell.calls[t].instance = "c" + std::to_string(t + 1);
        if (!validate_formula(f).empty()) continue;
        if (expansion_clause_count(f) > max_clauses) continue;
        return f;
    }
}

FlatGraph random_flat_graph(uint64_t seed, int max_vertices) {
    Rng rng(seed);
    int n = rng.range(1, max_vertices);
    FlatGraph g;
    for (int i = 1; i <= n; ++i) {
        VertexPath v;
        v.local_name = "v" + std::to_string(i);
        g.vertices.push_back(v);
    }
    if (n < 2) return g;
    int ne = rng.range(0, n * (n - 1) / 2 + 2);
    for (int e = 0; e < ne; ++e) {
        int a = static_cast<int>(rng.below(n));
        int b = static_cast<int>(rng.below(n - 1));
        if (b >= a) ++b;
        if (a > b) std::swap(a, b);
        g.edges.emplace_back(g.vertices[a], g.vertices[b]);
    }
    return g;
}

FlatCnf random_cnf(uint64_t seed, int max_vars) {
    Rng rng(seed);
    int n = rng.range(1, max_vars);
    FlatCnf cnf;
    for (int i = 1; i <= n; ++i) cnf.variables.push_back("x" + std::to_string(i));
    int nclauses = rng.range(1, 12);
    for (int j = 0; j < nclauses; ++j) {
        Clause cl;
        int width = rng.range(1, 3);
        for (int l = 0; l < width; ++l)
            cl.lits.push_back({cnf.variables[rng.below(n)], rng.below(2) == 1});
        cnf.clauses.push_back(std::move(cl));
        cnf.clause_owner.push_back("");
    }
    return cnf;
}

namespace {

struct BitGraph {
    int n = 0;
    std::vector<uint32_t> adj;            // simple adjacency
    std::vector<std::vector<long long>> w;  // edge multiplicities

    explicit BitGraph(const FlatGraph& g) {
        n = static_cast<int>(g.vertices.size());
        if (n > 24) throw Error("oracle-budget", "exact solver limited to 24 vertices");
        adj.assign(n, 0);
        w.assign(n, std::vector<long long>(n, 0));
        std::map<VertexPath, int> id;
        for (int i = 0; i < n; ++i) id[g.vertices[i]] = i;
        for (const auto& [a, b] : g.edges) {
            int i = id.at(a), j = id.at(b);
            adj[i] |= 1u << j;
            adj[j] |= 1u << i;
            w[i][j] += 1;
            w[j][i] += 1;
        }
    }
};

long long mis_rec(const BitGraph& g, uint32_t live) {
    if (!live) return 0;
    int best = -1, best_deg = -1;
    for (uint32_t rest = live; rest;) {
        int v = std::countr_zero(rest);
        rest &= rest - 1;
        int deg = std::popcount(g.adj[v] & live);
        if (deg > best_deg) {
            best_deg = deg;
            best = v;
        }
    }
    if (best_deg <= 1) {
        // isolated vertices and disjoint edges: one pick per component
        long long c = 0;
        uint32_t rest = live;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= ~(1u << v);
            rest &= ~g.adj[v];
            ++c;
        }
        return c;
    }
    uint32_t without = live & ~(1u << best);
    long long skip = mis_rec(g, without);
    long long take = 1 + mis_rec(g, without & ~g.adj[best]);
    return std::max(skip, take);
}

}  // namespace

long long exact_max_independent_set(const FlatGraph& g) {
    BitGraph bg(g);
    return mis_rec(bg, bg.n == 32 ? ~0u : (1u << bg.n) - 1);
}

long long exact_min_vertex_cover(const FlatGraph& g) {
    return static_cast<long long>(g.vertices.size()) - exact_max_independent_set(g);
}

long long exact_max_cut(const FlatGraph& g) {
    BitGraph bg(g);
    int n = bg.n;
    if (n <= 1) return 0;
    std::vector<int> side(n, 0);
    long long cut = 0, best = 0;
    uint64_t steps = 1ull << (n - 1);  // last vertex pinned to side 0
    for (uint64_t i = 1; i < steps; ++i) {
        int v = std::countr_zero(i);
        long long delta = 0;
        for (int u = 0; u < n; ++u)
            if (bg.w[v][u]) delta += side[u] == side[v] ? bg.w[v][u] : -bg.w[v][u];
        side[v] ^= 1;
        cut += delta;
        if (cut > best) best = cut;
    }
    return best;
}

long long exact_max_3sat(const FlatCnf& cnf) {
    int n = static_cast<int>(cnf.variables.size());
    if (n > 22) throw Error("oracle-budget", "exact solver limited to 22 variables");
    std::map<std::string, int> id;
    for (int i = 0; i < n; ++i) id[cnf.variables[i]] = i;
    std::vector<uint32_t> pos, neg;
    for (const auto& cl : cnf.clauses) {
        uint32_t p = 0, q = 0;
        for (const auto& lit : cl.lits)
            (lit.negated ? q : p) |= 1u << id.at(lit.var);
        pos.push_back(p);
        neg.push_back(q);
    }
    long long best = 0;
    uint64_t total = 1ull << n;
    for (uint64_t m = 0; m < total; ++m) {
        long long sat = 0;
        uint32_t mask = static_cast<uint32_t>(m);
        for (size_t j = 0; j < pos.size(); ++j)
            if ((pos[j] & mask) || (neg[j] & ~mask)) ++sat;
        if (sat > best) best = sat;
    }
    return best;
}

bool multigraph_equal(const FlatGraph& a, const FlatGraph& b) {
    auto verts = [](const FlatGraph& g) {
        std::vector<VertexPath> v = g.vertices;
        std::sort(v.begin(), v.end());
        return v;
    };
    auto edges = [](const FlatGraph& g) {
        std::vector<std::pair<VertexPath, VertexPath>> e;
        e.reserve(g.edges.size());
        for (const auto& [x, y] : g.edges)
            e.push_back(y < x ? std::make_pair(y, x) : std::make_pair(x, y));
        std::sort(e.begin(), e.end());
        return e;
    };
    return verts(a) == verts(b) && edges(a) == edges(b);
}

bool is_vertex_cover(const FlatGraph& g, const std::set<VertexPath>& cover) {
    for (const auto& [a, b] : g.edges)
        if (!cover.count(a) && !cover.count(b)) return false;
    return true;
}

bool is_matching(const FlatGraph& g,
                 const std::vector<std::pair<VertexPath, VertexPath>>& m) {
    std::set<std::pair<VertexPath, VertexPath>> present;
    for (const auto& [a, b] : g.edges)
        present.insert(b < a ? std::make_pair(b, a) : std::make_pair(a, b));
    std::set<VertexPath> used;
    for (const auto& [a, b] : m) {
        if (a == b) return false;
        if (!present.count(b < a ? std::make_pair(b, a) : std::make_pair(a, b)))
            return false;
        if (!used.insert(a).second || !used.insert(b).second) return false;
    }
    return true;
}

bool is_maximal_matching(const FlatGraph& g,
                         const std::vector<std::pair<VertexPath, VertexPath>>& m) {
    if (!is_matching(g, m)) return false;
    std::set<VertexPath> used;
    for (const auto& [a, b] : m) {
        used.insert(a);
        used.insert(b);
    }
    for (const auto& [a, b] : g.edges)
        if (!used.count(a) && !used.count(b)) return false;
    return true;
}

BigInt cut_crossing_count(const FlatGraph& g, const std::set<VertexPath>& side1) {
    BigInt c = 0;
    for (const auto& [a, b] : g.edges)
        if (side1.count(a) != side1.count(b)) c += 1;
    return c;
}

bool is_independent(const FlatGraph& g, const std::set<VertexPath>& s) {
    for (const auto& [a, b] : g.edges)
        if (s.count(a) && s.count(b)) return false;
    return true;
}

bool is_maximal_independent(const FlatGraph& g, const std::set<VertexPath>& s) {
    if (!is_independent(g, s)) return false;
    std::set<VertexPath> blocked;
    for (const auto& [a, b] : g.edges) {
        if (s.count(a)) blocked.insert(b);
        if (s.count(b)) blocked.insert(a);
    }
    for (const auto& v : g.vertices)
        if (!s.count(v) && !blocked.count(v)) return false;
    return true;
}

long long satisfied_count(const FlatCnf& cnf, const std::map<std::string, bool>& assignment) {
    long long sat = 0;
    for (const auto& cl : cnf.clauses) {
        bool ok = false;
        for (const auto& lit : cl.lits) {
            auto it = assignment.find(lit.var);
            bool val = it != assignment.end() && it->second;
            if (val != lit.negated) {
                ok = true;
                break;
            }
        }
        if (ok) ++sat;
    }
    return sat;
}

}  // namespace hg
