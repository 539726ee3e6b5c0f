#pragma once
// Hierarchical graph specifications: cells, text format, validation, size accounting.

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hg/bigint.hpp"
#include "hg/error.hpp"

namespace hg {

// One call site: an instance of an earlier cell together with its pin bindings.
struct Nonterminal {
    std::string instance;
    int callee = -1;                   // index into HierSpec::cells
    std::vector<std::string> binding;  // binding[k] = caller terminal for callee pin k+1

    bool operator==(const Nonterminal&) const = default;
};

struct CellDef {
    std::string name;
    std::vector<std::string> pins;  // declaration order defines pin indices 1..p
    std::vector<std::string> explicit_vertices;
    std::vector<Nonterminal> nonterminals;
    std::vector<std::pair<std::string, std::string>> edges;  // terminal-terminal only

    int pin_index(const std::string& terminal) const;  // 1-based, 0 if not a pin
    bool is_terminal(const std::string& name) const;

    bool operator==(const CellDef&) const = default;
};

struct HierSpec {
    std::vector<CellDef> cells;  // bottom-up order, root last

    const CellDef& root() const { return cells.back(); }
    std::optional<int> cell_index(const std::string& name) const;

    bool operator==(const HierSpec&) const = default;
};

// Vertex of the expansion: instance trail from the root plus a local terminal name.
struct VertexPath {
    std::vector<std::string> trail;
    std::string local_name;

    std::string label() const;  // "inst1/inst2/name"
    auto operator<=>(const VertexPath&) const = default;
};

VertexPath parse_path(const std::string& label);

struct Violation {
    int cell = -1;  // -1 for spec-level rules
    std::string rule;
    std::string detail;
};

struct CellStats {
    long long n = 0, m = 0, p = 0, r = 0;
    BigInt expansion_vertices, expansion_edges;
};

struct SpecStats {
    long long N = 0, M = 0, size = 0;
    std::vector<CellStats> per_cell;
    BigInt expansion_vertices, expansion_edges;  // of the root cell
    BigInt max_degree;
    std::vector<std::vector<BigInt>> pin_degree;  // per cell, per pin, degree inside
                                                  // that cell's own expansion
};

struct HierarchyNode {
    std::string instance;  // empty at the root
    int cell = -1;
    std::vector<HierarchyNode> children;
};

HierSpec parse_spec(const std::string& text);
std::string serialize_spec(const HierSpec& spec);
std::vector<Violation> validate(const HierSpec& spec);
void require_valid(const HierSpec& spec);  // throws Error("invalid-spec", ...)
SpecStats stats(const HierSpec& spec);
BigInt hierarchy_tree_size(const HierSpec& spec);
HierarchyNode hierarchy_tree(const HierSpec& spec, const BigInt& node_limit);

bool is_identifier(const std::string& s);

}  // namespace hg
