#pragma once
// Flat-side ground truth: canonical fixtures, seeded generators, exact solvers,
// and expansion-side validators.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hg/expand.hpp"
#include "hg/hiersat.hpp"
#include "hg/specmodel.hpp"

namespace hg {

// CHAIN_k expands to a path on 2k vertices; TOWER_k doubles per level
// (2^(k+1) - 2 expansion vertices); PINPAIR_1 carries a pin-pin edge two call
// levels below a pinless root; MULTI_1 expands to a parallel edge pair.
HierSpec chain_fixture(int k);
HierSpec tower_fixture(int k);
HierSpec pinpair_fixture();
HierSpec multi_fixture();

// Deterministic generator: mt19937_64 with plain modulo mapping, so outputs
// depend only on the seed, never on the standard library's distributions.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}
    uint64_t next() { return engine_(); }
    uint64_t below(uint64_t bound) { return bound ? next() % bound : 0; }
    int range(int lo, int hi) { return lo + static_cast<int>(below(hi - lo + 1)); }

private:
    std::mt19937_64 engine_;
};

// Valid simple specs with pinless roots and expansions of at most max_expansion
// vertices.  Cells ≤ 6, pins ≤ 3, explicit vertices ≤ 6, calls per cell ≤ 3.
HierSpec random_simple_spec(uint64_t seed, long long max_expansion = 500);

// Like random_simple_spec but with at least one pin-pin edge and no
// simplification collisions, for exercising make_simple.
HierSpec random_pin_edge_spec(uint64_t seed, long long max_expansion = 500);

// Valid hierarchical formulas, ≤ 4 cells, expansion clause count ≤ max_clauses.
HierFormula random_formula(uint64_t seed, long long max_clauses = 500);

FlatGraph random_flat_graph(uint64_t seed, int max_vertices);
FlatCnf random_cnf(uint64_t seed, int max_vars);

long long exact_min_vertex_cover(const FlatGraph& g);     // |V| ≤ 24
long long exact_max_cut(const FlatGraph& g);              // |V| ≤ 24, multiplicity-aware
long long exact_max_independent_set(const FlatGraph& g);  // |V| ≤ 24
long long exact_max_3sat(const FlatCnf& cnf);             // ≤ 22 variables

// Label-sensitive: same vertex sets, same edge multisets.
bool multigraph_equal(const FlatGraph& a, const FlatGraph& b);

bool is_vertex_cover(const FlatGraph& g, const std::set<VertexPath>& cover);
bool is_matching(const FlatGraph& g,
                 const std::vector<std::pair<VertexPath, VertexPath>>& m);
bool is_maximal_matching(const FlatGraph& g,
                         const std::vector<std::pair<VertexPath, VertexPath>>& m);
BigInt cut_crossing_count(const FlatGraph& g, const std::set<VertexPath>& side1);
bool is_independent(const FlatGraph& g, const std::set<VertexPath>& s);
bool is_maximal_independent(const FlatGraph& g, const std::set<VertexPath>& s);
long long satisfied_count(const FlatCnf& cnf, const std::map<std::string, bool>& assignment);

}  // namespace hg
