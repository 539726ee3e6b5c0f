#pragma once
// Greedy maximal independent set, flat and hierarchical (degree-bounded guarantee).

#include <set>
#include <string>
#include <vector>

#include "hg/expand.hpp"
#include "hg/hsolution.hpp"
#include "hg/specmodel.hpp"

namespace hg {

// Takes each unremoved vertex in order, removing it and its neighbours; returns a
// maximal independent set.
std::set<VertexPath> find_set(const FlatGraph& g, const std::vector<VertexPath>& order);

struct SetBurnt {
    std::vector<bool> removed;  // per pin
};

struct SetLevel {
    std::vector<std::string> A;      // all explicit vertices
    std::vector<std::string> B_set;  // those without removed-pin adjacency
    std::vector<std::string> X;      // chosen vertices
    BigInt size_V;
    SetBurnt burnt;
};

struct SetResult {
    BigInt size_V;
    HSolution solution;
    BigInt B;  // computed degree bound: stats().max_degree
    std::vector<SetLevel> levels;
};

// Requires a valid simple spec with a pinless root; the flattened solution is a
// maximal independent set of the expansion and size_V ≥ OPT / B.
SetResult hind_set(const HierSpec& spec);

}  // namespace hg
