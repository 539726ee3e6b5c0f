#include <doctest.h>

#include <set>
#include <vector>

#include "hg/expand.hpp"
#include "hg/maxcut.hpp"
#include "hg/oracle.hpp"
#include "hg/simplify.hpp"

using namespace hg;

namespace {

// E_n must be the exact crossing count of the emitted partition, and the
// partition must cut at least half of all edge occurrences.
void check_invariants(const HierSpec& spec) {
    CutResult r = hmax_cut(spec);
    FlatGraph g = expand(spec, BigInt(1000000));
    std::set<VertexPath> side1 = flatten(r.solution, BigInt(1000000));
    for (const auto& v : side1)
        CHECK(std::find(g.vertices.begin(), g.vertices.end(), v) != g.vertices.end());
    CHECK(r.E_n == cut_crossing_count(g, side1));
    CHECK(BigInt(2) * r.E_n >= BigInt(static_cast<long long>(g.edges.size())));
    CHECK(r.E_n <= BigInt(static_cast<long long>(g.edges.size())));
    CHECK(stats(spec).expansion_edges == static_cast<long long>(g.edges.size()));
}

}  // namespace

TEST_CASE("fmax_cut places greedily with ties to side 1") {
    FlatGraph tri;
    for (const char* n : {"a", "b", "c"}) tri.vertices.push_back(parse_path(n));
    tri.edges.emplace_back(tri.vertices[0], tri.vertices[1]);
    tri.edges.emplace_back(tri.vertices[1], tri.vertices[2]);
    tri.edges.emplace_back(tri.vertices[0], tri.vertices[2]);
    FlatCutResult r = fmax_cut(tri, tri.vertices);
    CHECK(r.cut_size == 2);
    CHECK(r.side1 == std::set<VertexPath>{tri.vertices[0], tri.vertices[2]});
    CHECK(r.side2 == std::set<VertexPath>{tri.vertices[1]});
    CHECK(r.cut_size == cut_crossing_count(tri, r.side1));
}

TEST_CASE("fmax_cut counts edge occurrences") {
    FlatGraph g;
    g.vertices.push_back(parse_path("u"));
    g.vertices.push_back(parse_path("v"));
    g.edges.emplace_back(g.vertices[0], g.vertices[1]);
    g.edges.emplace_back(g.vertices[0], g.vertices[1]);
    FlatCutResult r = fmax_cut(g, g.vertices);
    CHECK(r.cut_size == 2);
    CHECK(r.side2 == std::set<VertexPath>{g.vertices[1]});

    FlatGraph one;
    one.vertices.push_back(parse_path("x"));
    FlatCutResult s = fmax_cut(one, one.vertices);
    CHECK(s.cut_size == 0);
    CHECK(s.side1.count(one.vertices[0]) == 1);
}

TEST_CASE("fmax_cut clears the half-edges bound on random graphs") {
    for (uint64_t seed = 1; seed <= 15; ++seed) {
        FlatGraph g = random_flat_graph(seed, 12);
        FlatCutResult r = fmax_cut(g, g.vertices);
        CHECK(r.cut_size == cut_crossing_count(g, r.side1));
        CHECK(BigInt(2) * r.cut_size >= BigInt(static_cast<long long>(g.edges.size())));
        CHECK(r.side1.size() + r.side2.size() == g.vertices.size());
    }
}

TEST_CASE("hierarchical cut on fixtures") {
    HierSpec chain = chain_fixture(3);
    CutResult r = hmax_cut(chain);
    CHECK(r.E_n == 5);  // a path alternates perfectly
    CHECK(r.levels.back().A == std::vector<std::string>{"u"});
    CHECK(r.levels.back().B == std::vector<std::string>{"v"});
    check_invariants(chain);

    HierSpec triangle = make_simple(pinpair_fixture());
    CHECK(hmax_cut(triangle).E_n == 2);
    check_invariants(triangle);

    check_invariants(tower_fixture(3));
    check_invariants(tower_fixture(6));
}

TEST_CASE("hierarchical cut is deterministic") {
    HierSpec spec = random_simple_spec(11);
    CutResult a = hmax_cut(spec);
    CutResult b = hmax_cut(spec);
    CHECK(a.E_n == b.E_n);
    CHECK(serialize_solution(a.solution) == serialize_solution(b.solution));
}

TEST_CASE("cut precondition errors") {
    try {
        hmax_cut(pinpair_fixture());
        FAIL("expected not-simple");
    } catch (const Error& e) {
        CHECK(e.code() == "not-simple");
    }
    HierSpec pinned = parse_spec(
        "hgs 1\ncell A\npin p\nvertex x\nedge p x\nend\n");
    CHECK_THROWS_AS(hmax_cut(pinned), Error);
}

TEST_CASE("random corpus cut invariants") {
    for (uint64_t seed = 1; seed <= 30; ++seed) check_invariants(random_simple_spec(seed));
}
