// Two-phase pin-edge elimination: push closures up, then delete pin-pin edges.

#include "hg/simplify.hpp"

#include <algorithm>
#include <map>

namespace hg {

namespace {

// Per cell: unordered 1-based pin index pairs adjacent in the cell's expansion.
std::vector<std::set<std::pair<int, int>>> closure_by_index(const HierSpec& spec) {
    std::vector<std::set<std::pair<int, int>>> cl(spec.cells.size());
    for (size_t i = 0; i < spec.cells.size(); ++i) {
        const CellDef& c = spec.cells[i];
        auto add = [&](const std::string& a, const std::string& b) {
            int pa = c.pin_index(a), pb = c.pin_index(b);
            if (pa == 0 || pb == 0) return;
            cl[i].insert(std::minmax(pa, pb));
        };
        for (const auto& [a, b] : c.edges) add(a, b);
        for (const auto& nt : c.nonterminals)
            for (const auto& [r, s] : cl[nt.callee]) add(nt.binding[r - 1], nt.binding[s - 1]);
    }
    return cl;
}

}  // namespace

PinClosure pin_closure(const HierSpec& spec) {
    require_valid(spec);
    auto cl = closure_by_index(spec);
    PinClosure out;
    out.pairs.resize(spec.cells.size());
    for (size_t i = 0; i < spec.cells.size(); ++i)
        for (const auto& [pa, pb] : cl[i])
            out.pairs[i].insert({spec.cells[i].pins[pa - 1], spec.cells[i].pins[pb - 1]});
    return out;
}

bool is_simple(const HierSpec& spec) {
    for (const auto& c : spec.cells)
        for (const auto& [a, b] : c.edges)
            if (c.pin_index(a) != 0 && c.pin_index(b) != 0) return false;
    return true;
}

HierSpec make_simple(const HierSpec& spec) {
    require_valid(spec);
    auto cl = closure_by_index(spec);
    HierSpec out = spec;
    for (auto& c : out.cells) {
        std::set<std::pair<std::string, std::string>> have;
        for (const auto& [a, b] : c.edges) have.insert(std::minmax(a, b));
        for (const auto& nt : c.nonterminals)
            for (const auto& [r, s] : cl[nt.callee]) {
                auto key = std::minmax(nt.binding[r - 1], nt.binding[s - 1]);
                if (have.insert(key).second) c.edges.emplace_back(key.first, key.second);
            }
        std::erase_if(c.edges, [&](const auto& e) {
            return c.pin_index(e.first) != 0 && c.pin_index(e.second) != 0;
        });
    }
    return out;
}

bool has_simplification_collisions(const HierSpec& spec) {
    auto cl = closure_by_index(spec);
    for (const auto& c : spec.cells) {
        std::map<std::pair<std::string, std::string>, int> cnt;
        for (const auto& [a, b] : c.edges) ++cnt[std::minmax(a, b)];
        for (const auto& nt : c.nonterminals)
            for (const auto& [r, s] : cl[nt.callee])
                ++cnt[std::minmax(nt.binding[r - 1], nt.binding[s - 1])];
        for (const auto& [pair, n] : cnt)
            if (n >= 2) return true;
    }
    return false;
}

}  // namespace hg
