#pragma once
// Macro expansion of hierarchical specs into labeled flat multigraphs.

#include <string>
#include <utility>
#include <vector>

#include "hg/specmodel.hpp"

namespace hg {

struct FlatGraph {
    std::vector<VertexPath> vertices;                      // no duplicates, stable order
    std::vector<std::pair<VertexPath, VertexPath>> edges;  // one entry per occurrence
};

FlatGraph expand(const HierSpec& spec, const BigInt& vertex_limit);

struct ResolvedVertex {
    int cell = -1;  // defining cell index
    bool is_pin = false;
};

ResolvedVertex resolve(const HierSpec& spec, const VertexPath& path);

// Line format: `v LABEL` then `e LABEL1 LABEL2`, one line per edge occurrence.
std::string export_flat_graph(const FlatGraph& g);

}  // namespace hg
