#include <doctest.h>

#include <bit>
#include <map>
#include <set>
#include <vector>

#include "hg/expand.hpp"
#include "hg/oracle.hpp"
#include "hg/simplify.hpp"

using namespace hg;

namespace {

// Second, independent enumerators for cross-checking the exact solvers.
// All work by plain subset masks over vertex/variable indices.

std::map<VertexPath, int> index_of(const FlatGraph& g) {
    std::map<VertexPath, int> id;
    for (size_t i = 0; i < g.vertices.size(); ++i) id[g.vertices[i]] = static_cast<int>(i);
    return id;
}

long long brute_min_cover(const FlatGraph& g) {
    auto id = index_of(g);
    int n = static_cast<int>(g.vertices.size());
    long long best = n;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool covers = true;
        for (const auto& [a, b] : g.edges)
            if (!((mask >> id[a]) & 1) && !((mask >> id[b]) & 1)) {
                covers = false;
                break;
            }
        if (covers) best = std::min<long long>(best, std::popcount(mask));
    }
    return best;
}

long long brute_max_independent(const FlatGraph& g) {
    auto id = index_of(g);
    int n = static_cast<int>(g.vertices.size());
    long long best = 0;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool indep = true;
        for (const auto& [a, b] : g.edges)
            if (((mask >> id[a]) & 1) && ((mask >> id[b]) & 1)) {
                indep = false;
                break;
            }
        if (indep) best = std::max<long long>(best, std::popcount(mask));
    }
    return best;
}

long long brute_max_cut(const FlatGraph& g) {
    auto id = index_of(g);
    int n = static_cast<int>(g.vertices.size());
    long long best = 0;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        long long crossing = 0;
        for (const auto& [a, b] : g.edges)
            if (((mask >> id[a]) & 1) != ((mask >> id[b]) & 1)) ++crossing;
        best = std::max(best, crossing);
    }
    return best;
}

long long brute_max_sat(const FlatCnf& cnf) {
    int n = static_cast<int>(cnf.variables.size());
    long long best = 0;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::map<std::string, bool> as;
        for (int i = 0; i < n; ++i) as[cnf.variables[i]] = (mask >> i) & 1;
        long long sat = 0;
        for (const auto& cl : cnf.clauses) {
            bool ok = false;
            for (const auto& lit : cl.lits) ok = ok || (as[lit.var] != lit.negated);
            if (ok) ++sat;
        }
        best = std::max(best, sat);
    }
    return best;
}

FlatGraph path3() {
    FlatGraph g;
    for (const char* name : {"a", "b", "c"}) g.vertices.push_back(parse_path(name));
    g.edges.emplace_back(g.vertices[0], g.vertices[1]);
    g.edges.emplace_back(g.vertices[1], g.vertices[2]);
    return g;
}

}  // namespace

TEST_CASE("generators repeat exactly per seed") {
    for (uint64_t seed : {1u, 7u, 23u}) {
        CHECK(random_simple_spec(seed) == random_simple_spec(seed));
        CHECK(random_pin_edge_spec(seed) == random_pin_edge_spec(seed));
        CHECK(random_formula(seed) == random_formula(seed));
        CHECK(multigraph_equal(random_flat_graph(seed, 10), random_flat_graph(seed, 10)));
        FlatCnf a = random_cnf(seed, 8), b = random_cnf(seed, 8);
        CHECK(a.variables == b.variables);
        CHECK(a.clauses == b.clauses);
    }
}

TEST_CASE("random_simple_spec meets its own contract") {
    size_t max_cells = 0;
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        HierSpec spec = random_simple_spec(seed);
        CHECK(validate(spec).empty());
        CHECK(is_simple(spec));
        CHECK(spec.cells.back().pins.empty());
        CHECK(stats(spec).expansion_vertices <= 500);
        max_cells = std::max(max_cells, spec.cells.size());
    }
    CHECK(max_cells > 1);  // the corpus exercises real hierarchy
}

TEST_CASE("random_pin_edge_spec leaves work for make_simple") {
    for (uint64_t seed = 1; seed <= 15; ++seed) {
        HierSpec spec = random_pin_edge_spec(seed);
        CHECK(validate(spec).empty());
        CHECK(!is_simple(spec));
        CHECK(!has_simplification_collisions(spec));
        CHECK(spec.cells.back().pins.empty());
    }
}

TEST_CASE("random_formula meets its own contract") {
    for (uint64_t seed = 1; seed <= 15; ++seed) {
        HierFormula f = random_formula(seed);
        CHECK(validate_formula(f).empty());
        CHECK(f.cells.back().params.empty());
        CHECK(expansion_clause_count(f) <= 500);
    }
}

TEST_CASE("exact graph solvers agree with subset enumeration") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        FlatGraph g = random_flat_graph(seed, 10);
        long long n = static_cast<long long>(g.vertices.size());
        CHECK(exact_min_vertex_cover(g) == brute_min_cover(g));
        CHECK(exact_max_independent_set(g) == brute_max_independent(g));
        CHECK(exact_max_cut(g) == brute_max_cut(g));
        CHECK(exact_min_vertex_cover(g) + exact_max_independent_set(g) == n);
    }
}

TEST_CASE("exact sat solver agrees with assignment enumeration") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        FlatCnf cnf = random_cnf(seed, 8);
        CHECK(exact_max_3sat(cnf) == brute_max_sat(cnf));
    }
}

TEST_CASE("exact solvers refuse oversized inputs") {
    FlatGraph big;
    for (int i = 0; i < 25; ++i) big.vertices.push_back(parse_path("v" + std::to_string(i)));
    try {
        exact_max_independent_set(big);
        FAIL("expected oracle-budget");
    } catch (const Error& e) {
        CHECK(e.code() == "oracle-budget");
    }
    FlatCnf wide;
    for (int i = 0; i < 23; ++i) wide.variables.push_back("x" + std::to_string(i));
    wide.clauses.push_back({{{"x0", false}}});
    wide.clause_owner.push_back("");
    CHECK_THROWS_AS(exact_max_3sat(wide), Error);
}

TEST_CASE("matching validators") {
    FlatGraph g = path3();
    auto a = g.vertices[0], b = g.vertices[1], c = g.vertices[2];
    CHECK(is_matching(g, {}));
    CHECK(is_matching(g, {{a, b}}));
    CHECK(!is_matching(g, {{a, c}}));          // not an edge
    CHECK(!is_matching(g, {{a, b}, {b, c}}));  // b reused
    CHECK(!is_matching(g, {{b, b}}));
    CHECK(is_maximal_matching(g, {{a, b}}));  // b blocks the other edge
    CHECK(is_maximal_matching(g, {{b, c}}));
    CHECK(!is_maximal_matching(g, {}));
}

TEST_CASE("cover and independence validators") {
    FlatGraph g = path3();
    auto a = g.vertices[0], b = g.vertices[1], c = g.vertices[2];
    CHECK(is_vertex_cover(g, {b}));
    CHECK(!is_vertex_cover(g, {a}));
    CHECK(is_vertex_cover(g, {a, c}));
    CHECK(is_independent(g, {a, c}));
    CHECK(!is_independent(g, {a, b}));
    CHECK(is_maximal_independent(g, {a, c}));
    CHECK(is_maximal_independent(g, {b}));
    CHECK(!is_maximal_independent(g, {a}));  // c is neither chosen nor blocked
}

TEST_CASE("cut count respects edge multiplicity") {
    FlatGraph g;
    g.vertices.push_back(parse_path("u"));
    g.vertices.push_back(parse_path("v"));
    g.edges.emplace_back(g.vertices[0], g.vertices[1]);
    g.edges.emplace_back(g.vertices[0], g.vertices[1]);
    CHECK(cut_crossing_count(g, {g.vertices[0]}) == 2);
    CHECK(cut_crossing_count(g, {}) == 0);
    CHECK(exact_max_cut(g) == 2);
}

TEST_CASE("multigraph_equal is order-blind but multiplicity-aware") {
    FlatGraph g = path3();
    FlatGraph h;
    h.vertices = {g.vertices[2], g.vertices[0], g.vertices[1]};
    h.edges.emplace_back(g.vertices[2], g.vertices[1]);  // reversed endpoints
    h.edges.emplace_back(g.vertices[1], g.vertices[0]);
    CHECK(multigraph_equal(g, h));
    h.edges.emplace_back(g.vertices[1], g.vertices[0]);
    CHECK(!multigraph_equal(g, h));
    h.edges.pop_back();
    h.vertices[0] = parse_path("zz");
    CHECK(!multigraph_equal(g, h));
}

TEST_CASE("satisfied_count treats unassigned variables as false") {
    FlatCnf cnf;
    cnf.variables = {"m"};
    cnf.clauses.push_back({{{"m", false}}});
    cnf.clauses.push_back({{{"m", true}}});
    cnf.clause_owner = {"", ""};
    CHECK(satisfied_count(cnf, {}) == 1);  // only the negated clause holds
    CHECK(satisfied_count(cnf, {{"m", true}}) == 1);
    CHECK(satisfied_count(cnf, {{"m", false}}) == 1);
}
