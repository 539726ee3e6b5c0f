#include <doctest.h>

#include <set>
#include <vector>

#include "hg/expand.hpp"
#include "hg/indset.hpp"
#include "hg/oracle.hpp"
#include "hg/simplify.hpp"

using namespace hg;

namespace {

void check_invariants(const HierSpec& spec) {
    SetResult r = hind_set(spec);
    FlatGraph g = expand(spec, BigInt(1000000));
    std::set<VertexPath> chosen = flatten(r.solution, BigInt(1000000));
    CHECK(is_independent(g, chosen));
    CHECK(is_maximal_independent(g, chosen));
    CHECK(r.size_V == BigInt(static_cast<long long>(chosen.size())));
    CHECK(r.B == stats(spec).max_degree);
    if (g.vertices.size() <= 24)
        CHECK(r.size_V * (r.B == 0 ? BigInt(1) : r.B) >= exact_max_independent_set(g));
}

}  // namespace

TEST_CASE("find_set takes vertices in order") {
    FlatGraph tri;
    for (const char* n : {"a", "b", "c"}) tri.vertices.push_back(parse_path(n));
    tri.edges.emplace_back(tri.vertices[0], tri.vertices[1]);
    tri.edges.emplace_back(tri.vertices[1], tri.vertices[2]);
    tri.edges.emplace_back(tri.vertices[0], tri.vertices[2]);
    CHECK(find_set(tri, tri.vertices) == std::set<VertexPath>{tri.vertices[0]});

    FlatGraph path;
    for (const char* n : {"a", "b", "c", "d"}) path.vertices.push_back(parse_path(n));
    for (int i = 0; i < 3; ++i) path.edges.emplace_back(path.vertices[i], path.vertices[i + 1]);
    CHECK(find_set(path, path.vertices) ==
          std::set<VertexPath>{path.vertices[0], path.vertices[2]});
    // reversed order picks the other alternation
    std::vector<VertexPath> rev(path.vertices.rbegin(), path.vertices.rend());
    CHECK(find_set(path, rev) == std::set<VertexPath>{path.vertices[3], path.vertices[1]});

    FlatGraph empty;
    CHECK(find_set(empty, {}).empty());
}

TEST_CASE("find_set is maximal on random graphs") {
    for (uint64_t seed = 1; seed <= 15; ++seed) {
        FlatGraph g = random_flat_graph(seed, 12);
        std::set<VertexPath> s = find_set(g, g.vertices);
        CHECK(is_maximal_independent(g, s));
    }
}

TEST_CASE("hierarchical set on fixtures") {
    HierSpec chain = chain_fixture(3);
    SetResult r = hind_set(chain);
    CHECK(r.size_V == 3);
    std::set<VertexPath> want = {parse_path("u"), parse_path("I/u"), parse_path("I/I/u")};
    CHECK(flatten(r.solution, BigInt(100)) == want);
    CHECK(r.B == 2);
    check_invariants(chain);

    check_invariants(tower_fixture(3));
    check_invariants(tower_fixture(6));
    check_invariants(make_simple(pinpair_fixture()));
}

TEST_CASE("set precondition errors") {
    try {
        hind_set(pinpair_fixture());
        FAIL("expected not-simple");
    } catch (const Error& e) {
        CHECK(e.code() == "not-simple");
    }
    HierSpec pinned = parse_spec("hgs 1\ncell A\npin p\nvertex x\nedge p x\nend\n");
    CHECK_THROWS_AS(hind_set(pinned), Error);
}

TEST_CASE("random corpus set invariants") {
    for (uint64_t seed = 1; seed <= 30; ++seed) check_invariants(random_simple_spec(seed));
}
