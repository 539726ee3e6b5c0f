#pragma once
// Vertex cover heuristic on hierarchical specs via matched-pin burnt graphs.

#include <string>
#include <utility>
#include <vector>

#include "hg/hsolution.hpp"
#include "hg/specmodel.hpp"

namespace hg {

// Scans edges in the given order, keeping an edge iff both endpoints are free.
std::vector<std::pair<int, int>> greedy_maximal_matching(
    int vertex_count, const std::vector<std::pair<int, int>>& edges);

// Deterministic augmenting-path maximum matching; left vertices and their
// adjacency lists are visited in the given order.
std::vector<std::pair<int, int>> bipartite_maximum_matching(
    int left_count, int right_count, const std::vector<std::pair<int, int>>& edges);

// Matching-induced pin summary a caller substitutes for a callee.
struct VcBurnt {
    std::vector<int> pins;                                   // matched pin indices, 1-based
    std::vector<VertexPath> partner_vertices;                // relative paths
    std::vector<std::pair<int, VertexPath>> marked_edges;    // (pin index, partner)
    std::vector<std::pair<int, VertexPath>> residual_edges;  // non-matching pin adjacencies
};

struct VcLevel {
    std::vector<std::pair<std::string, std::string>> MM;  // local maximal matching
    std::vector<std::string> V_l;                         // leftover explicit vertices
    std::vector<std::string> V_x;                         // leftovers matched against burnt copies
    std::vector<VertexPath> V_y;                          // their partners, as relative paths
    std::vector<std::pair<std::string, VertexPath>> CM;   // the (V_x, V_y) pairs
    BigInt psi;
    VcBurnt burnt;
};

struct VcResult {
    BigInt psi;
    HSolution solution;
    std::vector<VcLevel> levels;  // per cell, for inspection and invariant checks
};

// Requires a valid simple spec with a pinless root; psi ≤ 2 * optimum cover size.
VcResult hvc(const HierSpec& spec);

// psi / 2: size of the implicit maximal matching, a 2-approximation of the
// minimum maximal matching.
BigInt min_maximal_matching_size(const HierSpec& spec);

}  // namespace hg
