// Hierarchical 3SAT: format, macro expansion, bipartite-spec construction, and
// the star-decomposition heuristics.

#include "hg/hiersat.hpp"

#include <algorithm>
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

int formula_index(const HierFormula& f, const std::string& name) {
    for (size_t i = 0; i < f.cells.size(); ++i)
        if (f.cells[i].name == name) return static_cast<int>(i);
    return -1;
}

bool declares_var(const FormulaCell& c, const std::string& v) {
    return std::find(c.params.begin(), c.params.end(), v) != c.params.end() ||
           std::find(c.locals.begin(), c.locals.end(), v) != c.locals.end();
}

std::string join_trail(const std::vector<std::string>& trail, const std::string& name) {
    std::string out;
    for (const auto& seg : trail) {
        out += seg;
        out += '/';
    }
    out += name;
    return out;
}

}  // namespace

HierFormula parse_formula(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool saw_header = false, in_cell = false;
    HierFormula f;
    FormulaCell cell;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto tok = tokenize(raw);
        if (tok.empty()) continue;
        if (!saw_header) {
            if (tok.size() != 2 || tok[0] != "h3f" || tok[1] != "1")
                parse_fail(line_no, "expected header 'h3f 1'");
            saw_header = true;
            continue;
        }
        const std::string& kw = tok[0];
        if (!in_cell) {
            if (kw != "formula" || tok.size() < 4 || tok[2] != "(" || tok.back() != ")")
                parse_fail(line_no, "expected 'formula NAME ( PARAMS )'");
            cell.name = tok[1];
            cell.params.assign(tok.begin() + 3, tok.end() - 1);
            in_cell = true;
        } else if (kw == "end") {
            if (tok.size() != 1) parse_fail(line_no, "unexpected tokens after 'end'");
            f.cells.push_back(std::move(cell));
            cell = FormulaCell{};
            in_cell = false;
        } else if (kw == "var") {
            if (tok.size() != 2) parse_fail(line_no, "expected 'var NAME'");
            cell.locals.push_back(tok[1]);
        } else if (kw == "clause") {
            if (tok.size() < 2 || tok.size() > 4)
                parse_fail(line_no, "clause takes 1 to 3 literals");
            Clause cl;
            for (size_t t = 1; t < tok.size(); ++t) {
                Literal lit;
                lit.negated = tok[t].size() > 1 && tok[t][0] == '!';
                lit.var = lit.negated ? tok[t].substr(1) : tok[t];
                cl.lits.push_back(std::move(lit));
            }
            cell.clauses.push_back(std::move(cl));
        } else if (kw == "call") {
            if (tok.size() < 4 || tok[2] != "(" || tok.back() != ")")
                parse_fail(line_no, "expected 'call NAME ( ARGS )'");
            int callee = formula_index(f, tok[1]);
            if (callee < 0) parse_fail(line_no, "call to undeclared formula '" + tok[1] + "'");
            FormulaCall call;
            call.callee = callee;
            call.args.assign(tok.begin() + 3, tok.end() - 1);
            call.instance = "c" + std::to_string(cell.calls.size() + 1);
            cell.calls.push_back(std::move(call));
        } else {
            parse_fail(line_no, "unknown directive '" + kw + "'");
        }
    }
    if (!saw_header) parse_fail(line_no, "empty input, expected 'h3f 1'");
    if (in_cell) parse_fail(line_no, "unterminated formula '" + cell.name + "'");
    require_valid_formula(f);
    return f;
}

std::string serialize_formula(const HierFormula& f) {
    std::ostringstream out;
    out << "h3f 1\n";
    for (const auto& c : f.cells) {
        out << "\nformula " << c.name << " (";
        for (const auto& p : c.params) out << ' ' << p;
        out << " )\n";
        for (const auto& v : c.locals) out << "var " << v << "\n";
        for (const auto& cl : c.clauses) {
            out << "clause";
            for (const auto& lit : cl.lits) out << ' ' << (lit.negated ? "!" : "") << lit.var;
            out << "\n";
        }
        for (const auto& call : c.calls) {
            out << "call " << f.cells[call.callee].name << " (";
            for (const auto& a : call.args) out << ' ' << a;
            out << " )\n";
        }
        out << "end\n";
    }
    return out.str();
}

std::vector<Violation> validate_formula(const HierFormula& f) {
    std::vector<Violation> out;
    auto add = [&](int cell, const std::string& rule, const std::string& detail) {
        out.push_back({cell, rule, detail});
    };
    if (f.cells.empty()) {
        add(-1, "empty-formula", "formula has no cells");
        return out;
    }
    std::set<std::string> cell_names;
    for (size_t i = 0; i < f.cells.size(); ++i) {
        const FormulaCell& c = f.cells[i];
        int ci = static_cast<int>(i);
        if (!is_identifier(c.name)) add(ci, "bad-identifier", "cell name '" + c.name + "'");
        if (!cell_names.insert(c.name).second)
            add(ci, "duplicate-cell", "cell name '" + c.name + "' reused");
        std::set<std::string> vars;
        for (const auto& lists : {c.params, c.locals})
            for (const auto& v : lists) {
                if (!is_identifier(v)) add(ci, "bad-identifier", "variable '" + v + "'");
                if (!vars.insert(v).second)
                    add(ci, "distinct-names", "variable '" + v + "' reused");
            }
        for (size_t j = 0; j < c.clauses.size(); ++j) {
            const Clause& cl = c.clauses[j];
            if (cl.lits.empty() || cl.lits.size() > 3)
                add(ci, "clause-width", "clause " + std::to_string(j + 1) + " has " +
                                            std::to_string(cl.lits.size()) + " literals");
            for (const auto& lit : cl.lits)
                if (!declares_var(c, lit.var))
                    add(ci, "clause-variable", "clause " + std::to_string(j + 1) +
                                                   " uses undeclared '" + lit.var + "'");
        }
        for (const auto& call : c.calls) {
            if (call.callee < 0 || call.callee >= ci) {
                add(ci, "call-order", "call must target an earlier cell");
                continue;
            }
            const FormulaCell& callee = f.cells[call.callee];
            if (call.args.size() != callee.params.size())
                add(ci, "call-arity", "call to '" + callee.name + "' passes " +
                                          std::to_string(call.args.size()) + " args for " +
                                          std::to_string(callee.params.size()) + " params");
            for (const auto& a : call.args)
                if (!declares_var(c, a))
                    add(ci, "call-argument", "argument '" + a + "' not declared");
        }
    }
    if (!f.cells.back().params.empty())
        add(static_cast<int>(f.cells.size()) - 1, "root-has-params",
            "root formula must have no parameters");
    std::vector<char> reach(f.cells.size(), 0);
    std::vector<int> stack = {static_cast<int>(f.cells.size()) - 1};
    reach.back() = 1;
    while (!stack.empty()) {
        int c = stack.back();
        stack.pop_back();
        for (const auto& call : f.cells[c].calls)
            if (call.callee >= 0 && call.callee < c && !reach[call.callee]) {
                reach[call.callee] = 1;
                stack.push_back(call.callee);
            }
    }
    for (size_t i = 0; i < f.cells.size(); ++i)
        if (!reach[i]) add(static_cast<int>(i), "unreachable-cell",
                           "cell '" + f.cells[i].name + "' is never called");
    return out;
}

void require_valid_formula(const HierFormula& f) {
    auto v = validate_formula(f);
    if (v.empty()) return;
    throw Error("invalid-formula",
                v.front().rule + ": " + v.front().detail + " (" +
                    std::to_string(v.size()) + " violation(s))");
}

BigInt expansion_clause_count(const HierFormula& f) {
    std::vector<BigInt> m(f.cells.size());
    for (size_t i = 0; i < f.cells.size(); ++i) {
        m[i] = f.cells[i].clauses.size();
        for (const auto& call : f.cells[i].calls) m[i] += m[call.callee];
    }
    return m.back();
}

namespace {

void expand_node(const HierFormula& f, int ci, std::vector<std::string>& trail,
                 const std::map<std::string, std::string>& sub, FlatCnf& out) {
    const FormulaCell& c = f.cells[ci];
    auto flat_var = [&](const std::string& v) {
        auto it = sub.find(v);
        return it != sub.end() ? it->second : join_trail(trail, v);
    };
    for (const auto& z : c.locals) out.variables.push_back(join_trail(trail, z));
    std::string owner = trail.empty() ? "" : join_trail(trail, "");
    if (!owner.empty()) owner.pop_back();  // drop trailing separator
    for (const auto& cl : c.clauses) {
        Clause fc;
        for (const auto& lit : cl.lits) fc.lits.push_back({flat_var(lit.var), lit.negated});
        out.clauses.push_back(std::move(fc));
        out.clause_owner.push_back(owner);
    }
    for (const auto& call : c.calls) {
        std::map<std::string, std::string> child_sub;
        const FormulaCell& callee = f.cells[call.callee];
        for (size_t k = 0; k < call.args.size(); ++k)
            child_sub[callee.params[k]] = flat_var(call.args[k]);
        trail.push_back(call.instance);
        expand_node(f, call.callee, trail, child_sub, out);
        trail.pop_back();
    }
}

}  // namespace

FlatCnf expand_formula(const HierFormula& f, const BigInt& clause_limit) {
    require_valid_formula(f);
    BigInt count = expansion_clause_count(f);
    if (count > clause_limit)
        throw Error("limit-exceeded", "expansion has " + to_decimal(count) +
                                          " clauses, limit " + to_decimal(clause_limit));
    FlatCnf out;
    std::vector<std::string> trail;
    expand_node(f, static_cast<int>(f.cells.size()) - 1, trail, {}, out);
    return out;
}

HierSpec tform(const HierFormula& f) {
    require_valid_formula(f);
    for (const auto& c : f.cells)
        for (const auto& call : c.calls) {
            std::set<std::string> seen(call.args.begin(), call.args.end());
            if (seen.size() != call.args.size())
                throw Error("repeated-arg", "cell '" + c.name +
                                                "' repeats an argument in a call to '" +
                                                f.cells[call.callee].name + "'");
        }
    HierSpec spec;
    for (const auto& c : f.cells) {
        CellDef g;
        g.name = c.name;
        for (const auto& p : c.params) g.pins.push_back("v_" + p);
        for (const auto& z : c.locals) g.explicit_vertices.push_back("v_" + z);
        for (size_t j = 0; j < c.clauses.size(); ++j)
            g.explicit_vertices.push_back("k_" + std::to_string(j + 1));
        for (const auto& call : c.calls) {
            Nonterminal nt;
            nt.instance = call.instance;
            nt.callee = call.callee;
            for (const auto& a : call.args) nt.binding.push_back("v_" + a);
            g.nonterminals.push_back(std::move(nt));
        }
        for (size_t j = 0; j < c.clauses.size(); ++j) {
            std::vector<std::string> distinct;
            for (const auto& lit : c.clauses[j].lits)
                if (std::find(distinct.begin(), distinct.end(), lit.var) == distinct.end())
                    distinct.push_back(lit.var);
            for (const auto& v : distinct)
                g.edges.emplace_back("k_" + std::to_string(j + 1), "v_" + v);
        }
        spec.cells.push_back(std::move(g));
    }
    require_valid(spec);
    return spec;
}

FlatSatResult fmax_3sat(const FlatCnf& cnf, const std::vector<std::string>& order) {
    std::map<std::string, std::pair<long long, long long>> pn;
    for (const auto& v : order) pn[v];
    for (const auto& cl : cnf.clauses) {
        const Literal& center = cl.lits.front();
        auto& [p, n] = pn[center.var];
        (center.negated ? n : p) += 1;
    }
    FlatSatResult res;
    for (const auto& v : order) {
        const auto& [p, n] = pn[v];
        res.assignment[v] = p >= n;
        res.heu += std::max(p, n);
    }
    return res;
}

HierSatResult hmax_3sat(const HierFormula& f) {
    require_valid_formula(f);
    int n = static_cast<int>(f.cells.size());
    std::vector<SatLevel> levels(n);
    for (int i = 0; i < n; ++i) {
        const FormulaCell& c = f.cells[i];
        SatLevel& lev = levels[i];
        std::map<std::string, std::array<BigInt, 2>> acc;  // var -> (PV, NV)
        for (const auto& v : c.params) acc[v] = {BigInt(0), BigInt(0)};
        for (const auto& v : c.locals) acc[v] = {BigInt(0), BigInt(0)};
        for (const auto& cl : c.clauses) {
            const Literal& center = cl.lits.front();
            acc[center.var][center.negated ? 1 : 0] += 1;
        }
        for (const auto& call : c.calls) {
            const SatBurnt& sb = levels[call.callee].burnt;
            for (size_t k = 0; k < call.args.size(); ++k) {
                acc[call.args[k]][0] += sb.param_pn[k][0];
                acc[call.args[k]][1] += sb.param_pn[k][1];
            }
        }
        lev.heu = 0;
        for (const auto& z : c.locals) {
            const auto& pv = acc[z];
            lev.local_pn[z] = pv;
            lev.local_value[z] = pv[0] >= pv[1];
            lev.heu += pv[0] >= pv[1] ? pv[0] : pv[1];
        }
        for (const auto& call : c.calls) lev.heu += levels[call.callee].heu;
        lev.burnt.param_pn.resize(c.params.size());
        for (size_t k = 0; k < c.params.size(); ++k) lev.burnt.param_pn[k] = acc[c.params[k]];
    }
    HierSatResult res;
    res.heu = levels[n - 1].heu;
    for (const auto& c : f.cells) {
        SolutionCell sc;
        sc.name = c.name;
        for (const auto& call : c.calls) sc.calls.push_back({call.instance, call.callee});
        res.solution.cells.push_back(std::move(sc));
    }
    for (int i = 0; i < n; ++i)
        for (const auto& z : f.cells[i].locals)
            if (levels[i].local_value[z]) {
                VertexPath p;
                p.local_name = z;
                res.solution.cells[i].selected.push_back(p);
            }
    res.levels = std::move(levels);
    return res;
}

bool query_assignment(const HierSatResult& r, const HierFormula& f, const VertexPath& var) {
    std::vector<int> path_cells;  // cells along the trail, root first
    int cur = static_cast<int>(f.cells.size()) - 1;
    path_cells.push_back(cur);
    std::vector<const FormulaCall*> path_calls;
    for (const auto& seg : var.trail) {
        const FormulaCell& c = f.cells[cur];
        auto it = std::find_if(c.calls.begin(), c.calls.end(),
                               [&](const FormulaCall& fc) { return fc.instance == seg; });
        if (it == c.calls.end())
            throw Error("bad-path", "unknown instance '" + seg + "' in formula '" + c.name + "'");
        path_calls.push_back(&*it);
        cur = it->callee;
        path_cells.push_back(cur);
    }
    std::string name = var.local_name;
    size_t depth = path_cells.size() - 1;
    for (;;) {
        const FormulaCell& c = f.cells[path_cells[depth]];
        auto lit = std::find(c.locals.begin(), c.locals.end(), name);
        if (lit != c.locals.end()) return r.levels[path_cells[depth]].local_value.at(name);
        auto pit = std::find(c.params.begin(), c.params.end(), name);
        if (pit == c.params.end())
            throw Error("bad-path", "no variable '" + name + "' in formula '" + c.name + "'");
        if (depth == 0)
            throw Error("bad-path", "root parameter reference");  // unreachable: root has none
        size_t k = pit - c.params.begin();
        name = path_calls[depth - 1]->args[k];
        --depth;
    }
}

}  // namespace hg
