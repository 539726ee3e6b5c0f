// Hierarchical circuits, the true-gate chain amplifiers, and the LP encoding.

#include "hg/hardgen.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace hg {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

[[noreturn]] void parse_fail(int line_no, const std::string& msg) {
    throw Error("parse-error", "line " + std::to_string(line_no) + ": " + msg);
}

std::string join_label(const std::vector<std::string>& trail, const std::string& name) {
    std::string out;
    for (const auto& seg : trail) {
        out += seg;
        out += '/';
    }
    out += name;
    return out;
}

}  // namespace

bool CircuitCell::has_node(const std::string& n) const {
    return pin_index(n) > 0 || is_gate(n) || is_input(n);
}

bool CircuitCell::is_gate(const std::string& n) const {
    for (const auto& [g, kind] : gates)
        if (g == n) return true;
    return false;
}

bool CircuitCell::is_input(const std::string& n) const {
    for (const auto& [g, bit] : inputs)
        if (g == n) return true;
    return false;
}

int CircuitCell::pin_index(const std::string& n) const {
    for (size_t i = 0; i < pins.size(); ++i)
        if (pins[i] == n) return static_cast<int>(i) + 1;
    return 0;
}

HierCircuit parse_circuit(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool saw_header = false, in_cell = false;
    HierCircuit c;
    CircuitCell cell;
    std::map<std::string, std::map<int, std::string>> pending_binds;
    auto cell_index = [&](const std::string& name) {
        for (size_t i = 0; i < c.cells.size(); ++i)
            if (c.cells[i].name == name) return static_cast<int>(i);
        return -1;
    };
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto tok = tokenize(raw);
        if (tok.empty()) continue;
        if (!saw_header) {
            if (tok.size() != 2 || tok[0] != "hcirc" || tok[1] != "1")
                parse_fail(line_no, "expected header 'hcirc 1'");
            saw_header = true;
            continue;
        }
        const std::string& kw = tok[0];
        if (!in_cell) {
            if (kw != "cell" || tok.size() != 2) parse_fail(line_no, "expected 'cell NAME'");
            if (cell_index(tok[1]) >= 0) parse_fail(line_no, "duplicate cell '" + tok[1] + "'");
            cell.name = tok[1];
            in_cell = true;
        } else if (kw == "end") {
            if (tok.size() != 1) parse_fail(line_no, "unexpected tokens after 'end'");
            for (auto& call : cell.calls) {
                size_t np = c.cells[call.callee].pins.size();
                call.binding.assign(np, "");
                auto it = pending_binds.find(call.instance);
                if (it != pending_binds.end())
                    for (const auto& [k, node] : it->second) {
                        if (k < 1 || k > static_cast<int>(np))
                            parse_fail(line_no, "bind index " + std::to_string(k) +
                                                    " out of range for '" + call.instance + "'");
                        call.binding[k - 1] = node;
                    }
            }
            pending_binds.clear();
            c.cells.push_back(std::move(cell));
            cell = CircuitCell{};
            in_cell = false;
        } else if (kw == "pin") {
            if (tok.size() != 2) parse_fail(line_no, "expected 'pin NAME'");
            cell.pins.push_back(tok[1]);
        } else if (kw == "input") {
            if (tok.size() != 3 || (tok[2] != "0" && tok[2] != "1"))
                parse_fail(line_no, "expected 'input NAME 0|1'");
            cell.inputs.emplace_back(tok[1], tok[2] == "1" ? 1 : 0);
        } else if (kw == "gate") {
            if (tok.size() != 3 || (tok[2] != "and" && tok[2] != "or"))
                parse_fail(line_no, "expected 'gate NAME and|or'");
            cell.gates.emplace_back(tok[1], tok[2] == "and" ? GateKind::And : GateKind::Or);
        } else if (kw == "wire") {
            if (tok.size() != 3) parse_fail(line_no, "expected 'wire SRC DST'");
            cell.wires.emplace_back(tok[1], tok[2]);
        } else if (kw == "nonterm") {
            if (tok.size() != 4 || tok[2] != ":")
                parse_fail(line_no, "expected 'nonterm INST : CELL'");
            int callee = cell_index(tok[3]);
            if (callee < 0) parse_fail(line_no, "call to undeclared cell '" + tok[3] + "'");
            for (const auto& call : cell.calls)
                if (call.instance == tok[1])
                    parse_fail(line_no, "duplicate instance '" + tok[1] + "'");
            CircuitCall call;
            call.instance = tok[1];
            call.callee = callee;
            cell.calls.push_back(std::move(call));
        } else if (kw == "bind") {
            if (tok.size() != 4) parse_fail(line_no, "expected 'bind INST PININDEX NODE'");
            bool known = false;
            for (const auto& call : cell.calls)
                if (call.instance == tok[1]) known = true;
            if (!known) parse_fail(line_no, "bind for undeclared instance '" + tok[1] + "'");
            int k = 0;
            try {
                k = std::stoi(tok[2]);
            } catch (...) {
                parse_fail(line_no, "bad pin index '" + tok[2] + "'");
            }
            if (pending_binds[tok[1]].count(k))
                parse_fail(line_no, "duplicate bind for pin " + tok[2]);
            pending_binds[tok[1]][k] = tok[3];
        } else {
            parse_fail(line_no, "unknown directive '" + kw + "'");
        }
    }
    if (!saw_header) parse_fail(line_no, "empty input, expected 'hcirc 1'");
    if (in_cell) parse_fail(line_no, "unterminated cell '" + cell.name + "'");
    require_valid_circuit(c);
    return c;
}

std::string serialize_circuit(const HierCircuit& c) {
    std::ostringstream out;
    out << "hcirc 1\n";
    for (const auto& cell : c.cells) {
        out << "\ncell " << cell.name << "\n";
        for (const auto& p : cell.pins) out << "pin " << p << "\n";
        for (const auto& [g, bit] : cell.inputs) out << "input " << g << ' ' << bit << "\n";
        for (const auto& [g, kind] : cell.gates)
            out << "gate " << g << ' ' << (kind == GateKind::And ? "and" : "or") << "\n";
        for (const auto& call : cell.calls) {
            out << "nonterm " << call.instance << " : " << c.cells[call.callee].name << "\n";
            for (size_t k = 0; k < call.binding.size(); ++k)
                out << "bind " << call.instance << ' ' << k + 1 << ' ' << call.binding[k]
                    << "\n";
        }
        for (const auto& [src, dst] : cell.wires) out << "wire " << src << ' ' << dst << "\n";
        out << "end\n";
    }
    return out.str();
}

std::vector<Violation> validate_circuit(const HierCircuit& c) {
    std::vector<Violation> out;
    auto add = [&](int cell, const std::string& rule, const std::string& detail) {
        out.push_back({cell, rule, detail});
    };
    if (c.cells.empty()) {
        add(-1, "empty-circuit", "circuit has no cells");
        return out;
    }
    std::set<std::string> cell_names;
    for (size_t i = 0; i < c.cells.size(); ++i) {
        const CircuitCell& cell = c.cells[i];
        int ci = static_cast<int>(i);
        if (!is_identifier(cell.name)) add(ci, "bad-identifier", "cell name '" + cell.name + "'");
        if (!cell_names.insert(cell.name).second)
            add(ci, "duplicate-cell", "cell name '" + cell.name + "' reused");
        std::set<std::string> names;
        auto declare = [&](const std::string& n) {
            if (!is_identifier(n)) add(ci, "bad-identifier", "node '" + n + "'");
            if (!names.insert(n).second) add(ci, "distinct-names", "node '" + n + "' reused");
        };
        for (const auto& p : cell.pins) declare(p);
        for (const auto& [g, bit] : cell.inputs) {
            declare(g);
            if (bit != 0 && bit != 1) add(ci, "input-bit", "input '" + g + "' not 0/1");
        }
        for (const auto& [g, kind] : cell.gates) declare(g);
        for (const auto& [src, dst] : cell.wires) {
            if (!cell.has_node(src)) add(ci, "wire-endpoint", "unknown source '" + src + "'");
            if (!cell.has_node(dst)) add(ci, "wire-endpoint", "unknown target '" + dst + "'");
            if (cell.is_input(dst)) add(ci, "wire-into-input", "input '" + dst + "' is driven");
        }
        std::set<std::string> instances;
        for (const auto& call : cell.calls) {
            if (!instances.insert(call.instance).second)
                add(ci, "distinct-names", "instance '" + call.instance + "' reused");
            if (call.callee < 0 || call.callee >= ci) {
                add(ci, "call-order", "call must target an earlier cell");
                continue;
            }
            const CircuitCell& callee = c.cells[call.callee];
            if (call.binding.size() != callee.pins.size()) {
                add(ci, "binding-total", "instance '" + call.instance + "' binds " +
                                             std::to_string(call.binding.size()) + " of " +
                                             std::to_string(callee.pins.size()) + " pins");
                continue;
            }
            for (size_t k = 0; k < call.binding.size(); ++k)
                if (call.binding[k].empty() || !cell.has_node(call.binding[k]))
                    add(ci, "binding-target", "instance '" + call.instance + "' pin " +
                                                  std::to_string(k + 1) + " unbound or unknown");
        }
    }
    std::vector<char> reach(c.cells.size(), 0);
    std::vector<int> stack = {static_cast<int>(c.cells.size()) - 1};
    reach.back() = 1;
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (const auto& call : c.cells[i].calls)
            if (call.callee >= 0 && call.callee < i && !reach[call.callee]) {
                reach[call.callee] = 1;
                stack.push_back(call.callee);
            }
    }
    for (size_t i = 0; i < c.cells.size(); ++i)
        if (!reach[i])
            add(static_cast<int>(i), "unreachable-cell",
                "cell '" + c.cells[i].name + "' is never called");
    return out;
}

void require_valid_circuit(const HierCircuit& c) {
    auto v = validate_circuit(c);
    if (v.empty()) return;
    throw Error("invalid-circuit",
                v.front().rule + ": " + v.front().detail + " (" +
                    std::to_string(v.size()) + " violation(s))");
}

std::vector<std::vector<bool>> pin_directions_out(const HierCircuit& c) {
    std::vector<std::vector<bool>> out(c.cells.size());
    for (size_t i = 0; i < c.cells.size(); ++i) {
        const CircuitCell& cell = c.cells[i];
        out[i].assign(cell.pins.size(), false);
        for (size_t q = 0; q < cell.pins.size(); ++q) {
            for (const auto& [src, dst] : cell.wires)
                if (dst == cell.pins[q]) out[i][q] = true;
            for (const auto& call : cell.calls)
                for (size_t k = 0; k < call.binding.size(); ++k)
                    if (out[call.callee][k] && call.binding[k] == cell.pins[q])
                        out[i][q] = true;
        }
    }
    return out;
}

bool is_simple_circuit(const HierCircuit& c) {
    for (const auto& cell : c.cells)
        for (const auto& [src, dst] : cell.wires)
            if (cell.pin_index(src) > 0 && cell.pin_index(dst) > 0) return false;
    return true;
}

bool is_strongly_1lr(const HierCircuit& c) {
    for (size_t i = 0; i < c.cells.size(); ++i) {
        const CircuitCell& cell = c.cells[i];
        if (i == 0) {
            if (!cell.calls.empty()) return false;
            continue;
        }
        if (cell.calls.size() != 2) return false;
        for (const auto& call : cell.calls) {
            if (call.callee != static_cast<int>(i) - 1) return false;
            for (const auto& target : call.binding)
                if (cell.pin_index(target) > 0) return false;
        }
    }
    return true;
}

BigInt expansion_gate_count(const HierCircuit& c) {
    std::vector<BigInt> g(c.cells.size());
    for (size_t i = 0; i < c.cells.size(); ++i) {
        g[i] = c.cells[i].gates.size();
        for (const auto& call : c.cells[i].calls) g[i] += g[call.callee];
    }
    return g.back();
}

namespace {

// Alias-expanded evaluation: every flat node gets an id, bound pins are unioned
// with their targets, wires lift to edges between classes.  Each class holds
// exactly one non-pin node (bindings form trees rooted at terminals).
struct CircuitEval {
    std::map<std::string, int> value;  // every flat node, pins included
    int output = 0;
    BigInt true_gates = 0;
};

struct EvalNode {
    std::string label;
    int kind = 0;      // 0 pin, 1 input, 2 gate
    int bit = 0;       // inputs
    GateKind gk = GateKind::And;
};

struct EvalBuild {
    const HierCircuit* c;
    std::vector<EvalNode> nodes;
    std::vector<int> parent;
    std::vector<std::pair<int, int>> wires;

    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }

    // returns name -> id map for the freshly created tree node
    std::map<std::string, int> walk(int ci, std::vector<std::string>& trail) {
        const CircuitCell& cell = c->cells[ci];
        std::map<std::string, int> local;
        auto fresh = [&](const std::string& name, int kind) {
            EvalNode n;
            n.label = join_label(trail, name);
            n.kind = kind;
            int id = static_cast<int>(nodes.size());
            nodes.push_back(std::move(n));
            parent.push_back(id);
            local[name] = id;
            return id;
        };
        for (const auto& p : cell.pins) fresh(p, 0);
        for (const auto& [g, bit] : cell.inputs) nodes[fresh(g, 1)].bit = bit;
        for (const auto& [g, kind] : cell.gates) nodes[fresh(g, 2)].gk = kind;
        for (const auto& [src, dst] : cell.wires)
            wires.emplace_back(local.at(src), local.at(dst));
        for (const auto& call : cell.calls) {
            trail.push_back(call.instance);
            auto child = walk(call.callee, trail);
            trail.pop_back();
            const CircuitCell& callee = c->cells[call.callee];
            for (size_t k = 0; k < call.binding.size(); ++k)
                unite(child.at(callee.pins[k]), local.at(call.binding[k]));
        }
        return local;
    }
};

CircuitEval eval_core(const HierCircuit& c, const BigInt& gate_limit) {
    require_valid_circuit(c);
    if (!c.cells.back().pins.empty())
        throw Error("root-has-pins", "evaluation requires a pinless root cell");
    if (c.cells.back().gates.empty())
        throw Error("no-gates", "root cell declares no gates");
    BigInt count = expansion_gate_count(c);
    if (count > gate_limit)
        throw Error("limit-exceeded", "expansion has " + to_decimal(count) +
                                          " gates, limit " + to_decimal(gate_limit));

    EvalBuild b;
    b.c = &c;
    std::vector<std::string> trail;
    auto root_local = b.walk(static_cast<int>(c.cells.size()) - 1, trail);

    int n = static_cast<int>(b.nodes.size());
    std::vector<int> anchor(n, -1);  // class root -> non-pin node id
    for (int i = 0; i < n; ++i) {
        if (b.nodes[i].kind == 0) continue;
        int r = b.find(i);
        if (anchor[r] >= 0)
            throw Error("alias-conflict",
                        "nodes '" + b.nodes[anchor[r]].label + "' and '" + b.nodes[i].label +
                            "' are identified");
        anchor[r] = i;
    }
    std::map<int, std::vector<int>> succ;
    std::map<int, int> indeg;
    for (const auto& [u, v] : b.wires) {
        int ru = b.find(u), rv = b.find(v);
        succ[ru].push_back(rv);
        indeg[rv] += 1;
    }
    std::vector<int> roots;
    for (int i = 0; i < n; ++i)
        if (b.find(i) == i) roots.push_back(i);
    for (int r : roots) {
        if (anchor[r] < 0)
            throw Error("unbound-pin", "class of '" + b.nodes[r].label + "' has no terminal");
        const EvalNode& a = b.nodes[anchor[r]];
        int d = indeg.count(r) ? indeg.at(r) : 0;
        if (a.kind == 2 && d != 2)
            throw Error("gate-arity",
                        "gate '" + a.label + "' has " + std::to_string(d) + " inputs");
        if (a.kind == 1 && d != 0)
            throw Error("input-driven", "input '" + a.label + "' is driven");
    }

    std::map<int, int> val;
    std::map<int, std::pair<int, int>> pending;  // gate class -> (seen, acc)
    std::deque<int> queue;
    for (int r : roots) {
        const EvalNode& a = b.nodes[anchor[r]];
        if (a.kind == 1) {
            val[r] = a.bit;
            queue.push_back(r);
        } else if (a.kind == 2) {
            pending[r] = {0, b.nodes[anchor[r]].gk == GateKind::And ? 1 : 0};
        }
    }
    size_t resolved = val.size();
    while (!queue.empty()) {
        int r = queue.front();
        queue.pop_front();
        auto it = succ.find(r);
        if (it == succ.end()) continue;
        for (int s : it->second) {
            auto& [seen, acc] = pending.at(s);
            int v = val.at(r);
            acc = b.nodes[anchor[s]].gk == GateKind::And ? (acc & v) : (acc | v);
            if (++seen == 2) {
                val[s] = acc;
                ++resolved;
                queue.push_back(s);
            }
        }
    }
    if (resolved != roots.size())
        throw Error("cycle", "circuit expansion contains a cycle");

    CircuitEval res;
    for (int i = 0; i < n; ++i) res.value[b.nodes[i].label] = val.at(b.find(i));
    for (int r : roots)
        if (b.nodes[anchor[r]].kind == 2 && val.at(r) == 1) res.true_gates += 1;
    res.output = val.at(b.find(root_local.at(c.cells.back().gates.back().first)));
    return res;
}

// zz-style prefix guaranteed not to prefix any existing name in the circuit
std::string fresh_prefix(const HierCircuit& c, std::string base) {
    auto clashes = [&](const std::string& p) {
        for (const auto& cell : c.cells) {
            for (const auto& x : cell.pins)
                if (x.rfind(p, 0) == 0) return true;
            for (const auto& [x, bit] : cell.inputs)
                if (x.rfind(p, 0) == 0) return true;
            for (const auto& [x, k] : cell.gates)
                if (x.rfind(p, 0) == 0) return true;
        }
        return false;
    };
    while (clashes(base)) base.insert(base.begin(), base[0]);
    return base;
}

}  // namespace

EvalResult eval_circuit(const HierCircuit& c, const BigInt& gate_limit) {
    CircuitEval core = eval_core(c, gate_limit);
    return {core.output, core.true_gates};
}

MtgInstance gen_mtg_chain(const HierCircuit& c) {
    require_valid_circuit(c);
    if (!is_simple_circuit(c)) throw Error("not-simple", "input circuit is not simple");
    if (!is_strongly_1lr(c))
        throw Error("not-1lr", "input must be strongly 1-level-restricted");
    if (!c.cells.back().pins.empty())
        throw Error("root-has-pins", "input root cell must be pinless");
    if (c.cells.back().gates.empty())
        throw Error("no-gates", "input root cell declares no gates");

    int n = static_cast<int>(c.cells.size());
    long long N = 0;
    std::vector<long long> ni(n);
    for (int i = 0; i < n; ++i) {
        const CircuitCell& cell = c.cells[i];
        ni[i] = static_cast<long long>(cell.pins.size() + cell.inputs.size() +
                                       cell.gates.size() + cell.calls.size());
        N += ni[i];
    }
    std::string P = fresh_prefix(c, "zz_");
    std::string ci1 = P + "ci1", ci2 = P + "ci2", co1 = P + "co1", co2 = P + "co2";

    MtgInstance out;
    out.D.cells.resize(n);
    out.levels.resize(n);
    std::vector<BigInt> L(n);
    for (int i = 0; i < n; ++i) {
        CircuitCell d = c.cells[i];
        MtgLevel& lev = out.levels[i];
        bool is_root = (i == n - 1);
        auto seg_name = [&](long long j) { return P + "s" + std::to_string(j); };
        auto add_series = [&](long long K, const std::string& first_src1,
                              const std::string& first_src2) {
            // first_srcX empty: fed by deliveries, no local wires into segment head
            for (long long j = 1; j <= K; ++j) {
                d.gates.emplace_back(seg_name(j), GateKind::And);
                lev.segment_gates.push_back(seg_name(j));
                if (j == 1) {
                    if (!first_src1.empty()) {
                        d.wires.emplace_back(first_src1, seg_name(1));
                        d.wires.emplace_back(first_src2, seg_name(1));
                    }
                } else {
                    d.wires.emplace_back(seg_name(j - 1), seg_name(j));
                    d.wires.emplace_back(seg_name(j - 1), seg_name(j));
                }
            }
        };
        if (n == 1) {
            long long K = N * ni[i];
            std::string prev = c.cells[i].gates.back().first;
            add_series(K, prev, prev);
            L[i] = K;
        } else if (i == 0) {
            long long K = N * ni[i];
            d.pins.insert(d.pins.end(), {ci1, ci2, co1, co2});
            add_series(K, ci1, ci2);
            d.wires.emplace_back(seg_name(K), co1);
            d.wires.emplace_back(seg_name(K), co2);
            L[i] = K;
        } else {
            long long K = N * ni[i] - 2;
            std::string head = P + "a", tail = P + "b";
            lev.head_gate = head;
            lev.tail_gate = tail;
            lev.copy1 = d.calls[0].instance;
            lev.copy2 = d.calls[1].instance;
            if (!is_root) d.pins.insert(d.pins.end(), {ci1, ci2, co1, co2});
            d.gates.emplace_back(head, GateKind::And);
            if (is_root) {
                std::string out_c = c.cells[i].gates.back().first;
                d.wires.emplace_back(out_c, head);
                d.wires.emplace_back(out_c, head);
            } else {
                d.wires.emplace_back(ci1, head);
                d.wires.emplace_back(ci2, head);
            }
            add_series(K, "", "");
            d.gates.emplace_back(tail, GateKind::And);
            if (!is_root) {
                d.wires.emplace_back(tail, co1);
                d.wires.emplace_back(tail, co2);
            }
            // thread: head -> copy1 -> segment -> copy2 -> tail
            d.calls[0].binding.insert(d.calls[0].binding.end(),
                                      {head, head, seg_name(1), seg_name(1)});
            d.calls[1].binding.insert(d.calls[1].binding.end(),
                                      {seg_name(K), seg_name(K), tail, tail});
            L[i] = BigInt(N) * ni[i] + 2 * L[i - 1];
        }
        out.D.cells[i] = std::move(d);
    }
    out.chain_length = L[n - 1];
    require_valid_circuit(out.D);
    return out;
}

HierCircuit flat_mtg_chain(const HierCircuit& c, long long eps_p, long long eps_q) {
    require_valid_circuit(c);
    if (c.cells.size() != 1) throw Error("multi-cell", "flat chain needs a one-cell circuit");
    if (!c.cells.back().pins.empty())
        throw Error("root-has-pins", "input root cell must be pinless");
    if (c.cells.back().gates.empty())
        throw Error("no-gates", "input circuit declares no gates");
    if (eps_p < 1 || eps_q < 1) throw Error("bad-eps", "epsilon must be a positive rational");

    long long n = static_cast<long long>(c.cells.back().gates.size());
    long long t = (n * eps_q + eps_p - 1) / eps_p;  // ceil(n / eps)
    std::string P = fresh_prefix(c, "zz_");
    HierCircuit out = c;
    CircuitCell& cell = out.cells.back();
    std::string prev = cell.gates.back().first;
    for (long long j = 1; j <= t; ++j) {
        std::string g = P + "g" + std::to_string(j);
        cell.gates.emplace_back(g, GateKind::And);
        cell.wires.emplace_back(prev, g);
        cell.wires.emplace_back(prev, g);
        prev = g;
    }
    return out;
}

HlpSpec parse_lp(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool saw_header = false, in_cell = false;
    HlpSpec lp;
    LpCell cell;
    auto cell_index = [&](const std::string& name) {
        for (size_t i = 0; i < lp.cells.size(); ++i)
            if (lp.cells[i].name == name) return static_cast<int>(i);
        return -1;
    };
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto tok = tokenize(raw);
        if (tok.empty()) continue;
        if (!saw_header) {
            if (tok.size() != 2 || tok[0] != "hlp" || tok[1] != "1")
                parse_fail(line_no, "expected header 'hlp 1'");
            saw_header = true;
            continue;
        }
        const std::string& kw = tok[0];
        if (!in_cell) {
            if (kw != "program" || tok.size() < 4 || tok[2] != "(" || tok.back() != ")")
                parse_fail(line_no, "expected 'program NAME ( PARAMS )'");
            cell.name = tok[1];
            cell.params.assign(tok.begin() + 3, tok.end() - 1);
            in_cell = true;
        } else if (kw == "end") {
            if (tok.size() != 1) parse_fail(line_no, "unexpected tokens after 'end'");
            lp.cells.push_back(std::move(cell));
            cell = LpCell{};
            in_cell = false;
        } else if (kw == "var") {
            if (tok.size() != 2) parse_fail(line_no, "expected 'var NAME'");
            cell.locals.push_back(tok[1]);
        } else if (kw == "obj") {
            if (tok.size() != 2) parse_fail(line_no, "expected 'obj NAME'");
            cell.objective.push_back(tok[1]);
        } else if (kw == "ineq") {
            LinIneq iq;
            size_t t = 1;
            bool want_term = true;
            while (t < tok.size()) {
                if (tok[t] == "<=" || tok[t] == ">=" || tok[t] == "=") break;
                if (!want_term) {
                    if (tok[t] != "+") parse_fail(line_no, "expected '+' between terms");
                    ++t;
                    want_term = true;
                    continue;
                }
                auto star = tok[t].find('*');
                if (star == std::string::npos)
                    parse_fail(line_no, "expected COEFF*VAR term, got '" + tok[t] + "'");
                LinTerm term;
                try {
                    term.coeff = std::stoll(tok[t].substr(0, star));
                } catch (...) {
                    parse_fail(line_no, "bad coefficient in '" + tok[t] + "'");
                }
                term.var = tok[t].substr(star + 1);
                iq.lhs.push_back(std::move(term));
                ++t;
                want_term = false;
            }
            if (t + 2 != tok.size() || iq.lhs.empty())
                parse_fail(line_no, "expected 'ineq TERMS <=|>=|= CONST'");
            iq.rel = tok[t] == "<=" ? Rel::Le : tok[t] == ">=" ? Rel::Ge : Rel::Eq;
            try {
                iq.rhs = std::stoll(tok[t + 1]);
            } catch (...) {
                parse_fail(line_no, "bad constant '" + tok[t + 1] + "'");
            }
            cell.ineqs.push_back(std::move(iq));
        } else if (kw == "call") {
            if (tok.size() < 4 || tok[2] != "(" || tok.back() != ")")
                parse_fail(line_no, "expected 'call NAME ( ARGS )'");
            int callee = cell_index(tok[1]);
            if (callee < 0) parse_fail(line_no, "call to undeclared program '" + tok[1] + "'");
            LpCall call;
            call.callee = callee;
            call.args.assign(tok.begin() + 3, tok.end() - 1);
            if (call.args.size() != lp.cells[callee].params.size())
                parse_fail(line_no, "call to '" + tok[1] + "' passes " +
                                        std::to_string(call.args.size()) + " args for " +
                                        std::to_string(lp.cells[callee].params.size()) +
                                        " params");
            call.instance = "c" + std::to_string(cell.calls.size() + 1);
            cell.calls.push_back(std::move(call));
        } else {
            parse_fail(line_no, "unknown directive '" + kw + "'");
        }
    }
    if (!saw_header) parse_fail(line_no, "empty input, expected 'hlp 1'");
    if (in_cell) parse_fail(line_no, "unterminated program '" + cell.name + "'");
    if (lp.cells.empty()) parse_fail(line_no, "no programs");
    return lp;
}

std::string serialize_lp(const HlpSpec& lp) {
    std::ostringstream out;
    out << "hlp 1\n";
    for (const auto& cell : lp.cells) {
        out << "\nprogram " << cell.name << " (";
        for (const auto& p : cell.params) out << ' ' << p;
        out << " )\n";
        for (const auto& v : cell.locals) out << "var " << v << "\n";
        for (const auto& iq : cell.ineqs) {
            out << "ineq";
            for (size_t t = 0; t < iq.lhs.size(); ++t) {
                if (t) out << " +";
                out << ' ' << iq.lhs[t].coeff << '*' << iq.lhs[t].var;
            }
            out << ' ' << (iq.rel == Rel::Le ? "<=" : iq.rel == Rel::Ge ? ">=" : "=") << ' '
                << iq.rhs << "\n";
        }
        for (const auto& v : cell.objective) out << "obj " << v << "\n";
        for (const auto& call : cell.calls) {
            out << "call " << lp.cells[call.callee].name << " (";
            for (const auto& a : call.args) out << ' ' << a;
            out << " )\n";
        }
        out << "end\n";
    }
    return out.str();
}

HlpSpec gen_hlp(const HierCircuit& c) {
    require_valid_circuit(c);
    if (!is_simple_circuit(c)) throw Error("not-simple", "input circuit is not simple");
    if (!is_strongly_1lr(c))
        throw Error("not-1lr", "input must be strongly 1-level-restricted");
    if (!c.cells.back().pins.empty())
        throw Error("root-has-pins", "input root cell must be pinless");

    auto out_dir = pin_directions_out(c);
    std::string E = fresh_prefix(c, "e_");
    HlpSpec lp;
    for (size_t i = 0; i < c.cells.size(); ++i) {
        const CircuitCell& cell = c.cells[i];
        LpCell f;
        f.name = cell.name;
        f.params = cell.pins;
        for (const auto& [g, bit] : cell.inputs) f.locals.push_back(g);
        for (const auto& [g, kind] : cell.gates) f.locals.push_back(g);
        auto edge_var = [&](size_t call_j, size_t pin_k) {
            return E + "c" + std::to_string(call_j + 1) + "_" + std::to_string(pin_k + 1);
        };
        for (size_t j = 0; j < cell.calls.size(); ++j)
            for (size_t k = 0; k < cell.calls[j].binding.size(); ++k)
                f.locals.push_back(edge_var(j, k));

        for (const auto& [g, bit] : cell.inputs)
            f.ineqs.push_back({{{1, g}}, Rel::Eq, bit});
        for (const auto& [g, kind] : cell.gates) {
            std::vector<std::string> in_vars;
            for (const auto& [src, dst] : cell.wires)
                if (dst == g) in_vars.push_back(src);  // pins keep their name as params
            for (size_t j = 0; j < cell.calls.size(); ++j) {
                const CircuitCall& call = cell.calls[j];
                for (size_t k = 0; k < call.binding.size(); ++k)
                    if (out_dir[call.callee][k] && call.binding[k] == g)
                        in_vars.push_back(edge_var(j, k));
            }
            if (in_vars.size() != 2)
                throw Error("gate-arity", "gate '" + g + "' in cell '" + cell.name + "' has " +
                                              std::to_string(in_vars.size()) + " inputs");
            const std::string &xi = in_vars[0], &xj = in_vars[1];
            if (kind == GateKind::And) {
                f.ineqs.push_back({{{1, g}, {-1, xi}}, Rel::Le, 0});
                f.ineqs.push_back({{{1, g}, {-1, xj}}, Rel::Le, 0});
                f.ineqs.push_back({{{1, g}, {-1, xi}, {-1, xj}}, Rel::Ge, -1});
            } else {
                f.ineqs.push_back({{{1, xi}, {-1, g}}, Rel::Le, 0});
                f.ineqs.push_back({{{1, xj}, {-1, g}}, Rel::Le, 0});
                f.ineqs.push_back({{{1, g}, {-1, xi}, {-1, xj}}, Rel::Le, 0});
            }
        }
        for (const auto& p : cell.pins)
            for (const auto& [src, dst] : cell.wires)
                if (dst == p) f.ineqs.push_back({{{1, p}, {-1, src}}, Rel::Eq, 0});
        for (size_t j = 0; j < cell.calls.size(); ++j) {
            const CircuitCall& call = cell.calls[j];
            for (size_t k = 0; k < call.binding.size(); ++k)
                if (!out_dir[call.callee][k])
                    f.ineqs.push_back(
                        {{{1, edge_var(j, k)}, {-1, call.binding[k]}}, Rel::Eq, 0});
        }
        for (const auto& v : f.locals) {
            f.ineqs.push_back({{{1, v}}, Rel::Ge, 0});
            f.ineqs.push_back({{{1, v}}, Rel::Le, 1});
        }
        f.objective = f.locals;
        for (size_t j = 0; j < cell.calls.size(); ++j) {
            LpCall call;
            call.instance = "c" + std::to_string(j + 1);
            call.callee = cell.calls[j].callee;
            for (size_t k = 0; k < cell.calls[j].binding.size(); ++k)
                call.args.push_back(edge_var(j, k));
            f.calls.push_back(std::move(call));
        }
        lp.cells.push_back(std::move(f));
    }
    return lp;
}

namespace {

BigInt lp_var_count(const HlpSpec& lp) {
    std::vector<BigInt> m(lp.cells.size());
    for (size_t i = 0; i < lp.cells.size(); ++i) {
        m[i] = lp.cells[i].locals.size();
        for (const auto& call : lp.cells[i].calls) m[i] += m[call.callee];
    }
    return m.back();
}

void expand_lp_node(const HlpSpec& lp, int ci, std::vector<std::string>& trail,
                    const std::map<std::string, std::string>& sub, FlatLp& out) {
    const LpCell& cell = lp.cells[ci];
    auto flat_var = [&](const std::string& v) {
        auto it = sub.find(v);
        return it != sub.end() ? it->second : join_label(trail, v);
    };
    for (const auto& z : cell.locals) out.variables.push_back(join_label(trail, z));
    for (const auto& iq : cell.ineqs) {
        LinIneq flat;
        flat.rel = iq.rel;
        flat.rhs = iq.rhs;
        for (const auto& term : iq.lhs) flat.lhs.push_back({term.coeff, flat_var(term.var)});
        out.ineqs.push_back(std::move(flat));
    }
    for (const auto& z : cell.objective) out.objective.push_back(flat_var(z));
    for (const auto& call : cell.calls) {
        std::map<std::string, std::string> child_sub;
        const LpCell& callee = lp.cells[call.callee];
        for (size_t k = 0; k < call.args.size(); ++k)
            child_sub[callee.params[k]] = flat_var(call.args[k]);
        trail.push_back(call.instance);
        expand_lp_node(lp, call.callee, trail, child_sub, out);
        trail.pop_back();
    }
}

}  // namespace

FlatLp expand_lp(const HlpSpec& lp, const BigInt& var_limit) {
    if (lp.cells.empty()) throw Error("invalid-lp", "no programs");
    if (!lp.cells.back().params.empty())
        throw Error("invalid-lp", "root program must have no parameters");
    BigInt count = lp_var_count(lp);
    if (count > var_limit)
        throw Error("limit-exceeded", "expansion has " + to_decimal(count) +
                                          " variables, limit " + to_decimal(var_limit));
    FlatLp out;
    std::vector<std::string> trail;
    expand_lp_node(lp, static_cast<int>(lp.cells.size()) - 1, trail, {}, out);
    return out;
}

std::string export_flat_lp(const FlatLp& lp) {
    std::ostringstream out;
    for (const auto& iq : lp.ineqs) {
        for (size_t t = 0; t < iq.lhs.size(); ++t) {
            if (t) out << " + ";
            out << iq.lhs[t].coeff << '*' << iq.lhs[t].var;
        }
        out << ' ' << (iq.rel == Rel::Le ? "<=" : iq.rel == Rel::Ge ? ">=" : "=") << ' '
            << iq.rhs << "\n";
    }
    for (const auto& v : lp.objective) out << "obj " << v << "\n";
    return out.str();
}

namespace {

void canonical_walk(const HierCircuit& c, const HlpSpec& lp, int ci,
                    std::vector<std::string>& circ_trail, std::vector<std::string>& lp_trail,
                    const std::map<std::string, int>& values,
                    std::map<std::string, int>& out) {
    const CircuitCell& cell = c.cells[ci];
    const LpCell& f = lp.cells[ci];
    for (const auto& [g, bit] : cell.inputs)
        out[join_label(lp_trail, g)] = values.at(join_label(circ_trail, g));
    for (const auto& [g, kind] : cell.gates)
        out[join_label(lp_trail, g)] = values.at(join_label(circ_trail, g));
    for (size_t j = 0; j < cell.calls.size(); ++j) {
        const CircuitCall& call = cell.calls[j];
        const CircuitCell& callee = c.cells[call.callee];
        // edge variable = value crossing that callee pin
        size_t base = cell.inputs.size() + cell.gates.size();
        for (size_t k = 0; k < call.binding.size(); ++k) {
            size_t slot = base;
            for (size_t jj = 0; jj < j; ++jj) slot += c.cells[ci].calls[jj].binding.size();
            slot += k;
            circ_trail.push_back(call.instance);
            int v = values.at(join_label(circ_trail, callee.pins[k]));
            circ_trail.pop_back();
            out[join_label(lp_trail, f.locals.at(slot))] = v;
        }
        circ_trail.push_back(call.instance);
        lp_trail.push_back(f.calls[j].instance);
        canonical_walk(c, lp, call.callee, circ_trail, lp_trail, values, out);
        lp_trail.pop_back();
        circ_trail.pop_back();
    }
}

}  // namespace

std::map<std::string, int> canonical_assignment(const HierCircuit& c, const HlpSpec& lp,
                                                const BigInt& gate_limit) {
    if (lp.cells.size() != c.cells.size())
        throw Error("invalid-lp", "program does not mirror the circuit");
    CircuitEval core = eval_core(c, gate_limit);
    std::map<std::string, int> out;
    std::vector<std::string> ct, lt;
    canonical_walk(c, lp, static_cast<int>(c.cells.size()) - 1, ct, lt, core.value, out);
    return out;
}

bool lp_feasible(const FlatLp& lp, const std::map<std::string, int>& assignment) {
    for (const auto& iq : lp.ineqs) {
        long long s = 0;
        for (const auto& term : iq.lhs) s += term.coeff * assignment.at(term.var);
        bool ok = iq.rel == Rel::Le ? s <= iq.rhs : iq.rel == Rel::Ge ? s >= iq.rhs : s == iq.rhs;
        if (!ok) return false;
    }
    return true;
}

BigInt lp_objective(const FlatLp& lp, const std::map<std::string, int>& assignment) {
    BigInt s = 0;
    for (const auto& v : lp.objective) s += assignment.at(v);
    return s;
}

}  // namespace hg
