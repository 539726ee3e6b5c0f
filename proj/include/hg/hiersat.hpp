#pragma once
// Hierarchical 3SAT: formula cells, macro expansion, bipartite-spec construction,
// and the star-decomposition MAX-3SAT heuristics.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "hg/hsolution.hpp"
#include "hg/specmodel.hpp"

namespace hg {

struct Literal {
    std::string var;
    bool negated = false;

    bool operator==(const Literal&) const = default;
};

struct Clause {
    std::vector<Literal> lits;  // 1..3

    bool operator==(const Clause&) const = default;
};

struct FormulaCall {
    std::string instance;  // assigned positionally: c1, c2, ...
    int callee = -1;
    std::vector<std::string> args;  // caller variables, one per callee param

    bool operator==(const FormulaCall&) const = default;
};

struct FormulaCell {
    std::string name;
    std::vector<std::string> params;
    std::vector<std::string> locals;
    std::vector<Clause> clauses;
    std::vector<FormulaCall> calls;

    bool operator==(const FormulaCell&) const = default;
};

struct HierFormula {
    std::vector<FormulaCell> cells;  // root last, root has no params

    bool operator==(const HierFormula&) const = default;
};

struct FlatCnf {
    std::vector<std::string> variables;     // instance-trail labels
    std::vector<Clause> clauses;            // literals reference variable labels
    std::vector<std::string> clause_owner;  // emitting instance trail, "" at root
};

HierFormula parse_formula(const std::string& text);
std::string serialize_formula(const HierFormula& f);
std::vector<Violation> validate_formula(const HierFormula& f);
void require_valid_formula(const HierFormula& f);
BigInt expansion_clause_count(const HierFormula& f);

FlatCnf expand_formula(const HierFormula& f, const BigInt& clause_limit);

// Bipartite graph of the formula as a hierarchical graph spec: vertex v_<name>
// per variable, k_<j> per clause, one edge per distinct variable of each clause.
// Calls must not repeat an argument (the image binding must be injective).
HierSpec tform(const HierFormula& f);

struct FlatSatResult {
    std::map<std::string, bool> assignment;
    long long heu = 0;
};

// Star decomposition by first literal; variable set true iff unnegated centred
// occurrences are at least the negated ones; heu ≥ ceil(|C|/2).
FlatSatResult fmax_3sat(const FlatCnf& cnf, const std::vector<std::string>& order);

struct SatBurnt {
    std::vector<std::array<BigInt, 2>> param_pn;  // per param: (P_k, N_k)
};

struct SatLevel {
    std::map<std::string, bool> local_value;
    std::map<std::string, std::array<BigInt, 2>> local_pn;
    BigInt heu;
    SatBurnt burnt;
};

struct HierSatResult {
    BigInt heu;
    HSolution solution;  // variables assigned true
    std::vector<SatLevel> levels;
};

HierSatResult hmax_3sat(const HierFormula& f);

// Value of one expanded variable under the hierarchical assignment, O(size)
// without flattening.
bool query_assignment(const HierSatResult& r, const HierFormula& f, const VertexPath& var);

}  // namespace hg
