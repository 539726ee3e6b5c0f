#pragma once
// Pin-edge elimination producing simple specifications with the same expansion.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hg/specmodel.hpp"

namespace hg {

// Per cell: unordered pin-name pairs adjacent in the cell's fully substituted graph.
struct PinClosure {
    std::vector<std::set<std::pair<std::string, std::string>>> pairs;
};

PinClosure pin_closure(const HierSpec& spec);

// A spec is simple when no cell has an edge between two of its own pins.
bool is_simple(const HierSpec& spec);

// Two phases: push callee pin adjacencies up as caller terminal edges, then delete
// all pin-pin edges.  Expansion equality holds on collision-free inputs only.
HierSpec make_simple(const HierSpec& spec);

// True when some cell's pushed-up edge multiset would repeat a terminal pair
// (against a local edge or another pushed edge); make_simple then collapses
// multiplicity and expansion equality is lost.
bool has_simplification_collisions(const HierSpec& spec);

}  // namespace hg
