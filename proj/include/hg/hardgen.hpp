#pragma once
// Hierarchical monotone circuits, desk-scale evaluation, true-gate chain
// amplifiers, and the circuit-to-hierarchical-LP encoding.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hg/bigint.hpp"
#include "hg/error.hpp"
#include "hg/specmodel.hpp"

namespace hg {

enum class GateKind { And, Or };

struct CircuitCall {
    std::string instance;
    int callee = -1;
    std::vector<std::string> binding;  // per callee pin; repeats allowed

    bool operator==(const CircuitCall&) const = default;
};

struct CircuitCell {
    std::string name;
    std::vector<std::string> pins;
    std::vector<std::pair<std::string, int>> inputs;       // node, fixed bit
    std::vector<std::pair<std::string, GateKind>> gates;   // declaration order
    std::vector<std::pair<std::string, std::string>> wires;  // src -> dst, parallels allowed
    std::vector<CircuitCall> calls;

    bool has_node(const std::string& n) const;
    bool is_gate(const std::string& n) const;
    bool is_input(const std::string& n) const;
    int pin_index(const std::string& n) const;  // 1-based, 0 if absent

    bool operator==(const CircuitCell&) const = default;
};

struct HierCircuit {
    std::vector<CircuitCell> cells;  // root last; root's last declared gate is
                                     // the designated output

    bool operator==(const HierCircuit&) const = default;
};

HierCircuit parse_circuit(const std::string& text);
std::string serialize_circuit(const HierCircuit& c);
std::vector<Violation> validate_circuit(const HierCircuit& c);
void require_valid_circuit(const HierCircuit& c);

// A pin is an out-pin when it is driven inside its own cell (by a wire or by a
// callee out-pin bound to it); otherwise the caller feeds it.
std::vector<std::vector<bool>> pin_directions_out(const HierCircuit& c);

// No wire joins two pins of the same cell.
bool is_simple_circuit(const HierCircuit& c);

// C_1 call-free, each later C_i calls exactly two copies of C_{i-1}, and no
// binding targets a caller pin (an identified edge would span two levels).
bool is_strongly_1lr(const HierCircuit& c);

BigInt expansion_gate_count(const HierCircuit& c);

struct EvalResult {
    int output = 0;
    BigInt true_gates;  // AND/OR gates only, input nodes excluded
};

EvalResult eval_circuit(const HierCircuit& c, const BigInt& gate_limit);

struct MtgLevel {
    std::string head_gate, tail_gate;        // couplers, empty where absent
    std::vector<std::string> segment_gates;  // the series chain segment
    std::string copy1, copy2;                // the two lower-level instances
};

struct MtgInstance {
    HierCircuit D;
    std::vector<MtgLevel> levels;
    BigInt chain_length;  // total added AND gates across the expansion
};

// Wraps C with an AND chain threaded through every instance; true_gates(D) =
// true_gates(C) + (output ? chain_length : 0).  Input must be valid, simple,
// strongly 1-level-restricted, with a pinless root.
MtgInstance gen_mtg_chain(const HierCircuit& c);

// Single-cell variant: appends ceil(n*q/p) chain gates for eps = p/q; output 0
// forces true_gates < n, output 1 forces true_gates ≥ the chain length.
HierCircuit flat_mtg_chain(const HierCircuit& c, long long eps_p, long long eps_q);

struct LinTerm {
    long long coeff = 0;
    std::string var;

    bool operator==(const LinTerm&) const = default;
};

enum class Rel { Le, Ge, Eq };

struct LinIneq {
    std::vector<LinTerm> lhs;
    Rel rel = Rel::Le;
    long long rhs = 0;

    bool operator==(const LinIneq&) const = default;
};

struct LpCall {
    std::string instance;  // positional: c1, c2, ...
    int callee = -1;
    std::vector<std::string> args;

    bool operator==(const LpCall&) const = default;
};

struct LpCell {
    std::string name;
    std::vector<std::string> params;
    std::vector<std::string> locals;     // gate/input variables then edge variables
    std::vector<LinIneq> ineqs;
    std::vector<std::string> objective;  // unit coefficients
    std::vector<LpCall> calls;

    bool operator==(const LpCell&) const = default;
};

struct HlpSpec {
    std::vector<LpCell> cells;  // root last, no params

    bool operator==(const HlpSpec&) const = default;
};

HlpSpec parse_lp(const std::string& text);
std::string serialize_lp(const HlpSpec& lp);

// Per-gate inequality blocks, input and pin equations, edge-variable equations,
// unit-box constraints on locals, all-ones objective.
HlpSpec gen_hlp(const HierCircuit& c);

struct FlatLp {
    std::vector<std::string> variables;  // trail-prefixed labels
    std::vector<LinIneq> ineqs;
    std::vector<std::string> objective;
};

FlatLp expand_lp(const HlpSpec& lp, const BigInt& var_limit);
std::string export_flat_lp(const FlatLp& lp);

// Bit values the circuit evaluation induces on every flat LP variable.
std::map<std::string, int> canonical_assignment(const HierCircuit& c, const HlpSpec& lp,
                                                const BigInt& gate_limit);

bool lp_feasible(const FlatLp& lp, const std::map<std::string, int>& assignment);
BigInt lp_objective(const FlatLp& lp, const std::map<std::string, int>& assignment);

}  // namespace hg
