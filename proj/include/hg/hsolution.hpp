#pragma once
// Hierarchical solution sets: mirrored cell structure, queries, streaming, flatten.

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "hg/specmodel.hpp"

namespace hg {

struct SolutionCall {
    std::string instance;
    int callee = -1;

    bool operator==(const SolutionCall&) const = default;
};

struct SolutionCell {
    std::string name;                  // mirrors the source cell name
    std::vector<VertexPath> selected;  // relative paths within this cell's subtree
    std::vector<SolutionCall> calls;

    bool operator==(const SolutionCell&) const = default;
};

struct HSolution {
    std::vector<SolutionCell> cells;  // same order as the source spec

    bool operator==(const HSolution&) const = default;
};

HSolution parse_solution(const std::string& text);
std::string serialize_solution(const HSolution& sol);

// Empty solution with the spec's call structure copied over.
HSolution mirror_of(const HierSpec& spec);

// True iff some ancestor cell on v's trail selects the corresponding relative path.
bool query(const HSolution& sol, const HierSpec& spec, const VertexPath& v);

// Total number of expansion vertices the solution selects.
BigInt selected_count(const HSolution& sol);

struct StreamResult {
    BigInt emitted;
    size_t peak_entries = 0;  // high-water mark of stack frames + prefix segments
};

// Preorder traversal of the mirrored call tree; emits each selected expansion
// vertex exactly once.  Working memory stays proportional to the spec size.
StreamResult stream(const HSolution& sol, const BigInt& node_limit,
                    const std::function<void(const VertexPath&)>& sink);

std::set<VertexPath> flatten(const HSolution& sol, const BigInt& vertex_limit);

}  // namespace hg
