#pragma once
// Greedy max cut, flat and hierarchical, with two-super-node burnt graphs.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "hg/expand.hpp"
#include "hg/hsolution.hpp"
#include "hg/specmodel.hpp"

namespace hg {

struct FlatCutResult {
    std::set<VertexPath> side1, side2;
    BigInt cut_size;
};

// Places vertices in order on the side with fewer edge occurrences to already
// placed neighbours (ties to side 1); cut_size ≥ ceil(|E|/2).
FlatCutResult fmax_cut(const FlatGraph& g, const std::vector<VertexPath>& order);

struct CutBurnt {
    std::vector<std::array<BigInt, 2>> pin_wt;  // per pin: edges into side 1 / side 2
};

struct CutLevel {
    std::vector<std::string> A, B;  // explicit vertices without / with call adjacency
    std::vector<std::string> X1, X2, Y1, Y2;
    BigInt E1, E2, E_total;
    std::map<std::string, std::array<BigInt, 2>> count_v;  // per B vertex
    CutBurnt burnt;
};

struct CutResult {
    BigInt E_n;
    HSolution solution;  // side-1 vertices
    std::vector<CutLevel> levels;
};

// Requires a valid simple spec with a pinless root; 2 * E_n ≥ expansion edge count
// and E_n equals the true crossing count of the emitted partition.
CutResult hmax_cut(const HierSpec& spec);

}  // namespace hg
