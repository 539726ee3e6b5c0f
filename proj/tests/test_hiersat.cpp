#include <doctest.h>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hg/expand.hpp"
#include "hg/hiersat.hpp"
#include "hg/oracle.hpp"

using namespace hg;

namespace {

// Three-level formula with shared locals across call arguments; expands to
// exactly seven clauses.
const char* kNested =
    "h3f 1\n"
    "formula F1 ( x1 x2 )\n"
    "var z1\nvar z2\nvar z3\n"
    "clause x1 x2 z1\n"
    "clause z2 z3\n"
    "end\n"
    "formula F2 ( x3 x4 )\n"
    "var z4\nvar z5\n"
    "clause z4 z5 x4\n"
    "call F1 ( x3 z4 )\n"
    "call F1 ( z4 z5 )\n"
    "end\n"
    "formula F3 ( )\n"
    "var z6\nvar z7\nvar z8\n"
    "call F2 ( z8 z7 )\n"
    "call F1 ( z7 z6 )\n"
    "end\n";

std::map<std::string, bool> hier_assignment(const HierSatResult& r, const HierFormula& f,
                                            const FlatCnf& flat) {
    std::map<std::string, bool> out;
    for (const auto& v : flat.variables) out[v] = query_assignment(r, f, parse_path(v));
    return out;
}

// The clause-variable incidence graph the bipartite transform should expand to.
FlatGraph bipartite_of(const FlatCnf& flat) {
    auto var_path = [](const std::string& label) {
        VertexPath p = parse_path(label);
        p.local_name = "v_" + p.local_name;
        return p;
    };
    FlatGraph g;
    for (const auto& v : flat.variables) g.vertices.push_back(var_path(v));
    std::map<std::string, int> kcount;
    for (size_t j = 0; j < flat.clauses.size(); ++j) {
        const std::string& owner = flat.clause_owner[j];
        std::string label = "k_" + std::to_string(++kcount[owner]);
        VertexPath kv = parse_path(owner.empty() ? label : owner + "/" + label);
        g.vertices.push_back(kv);
        std::vector<std::string> distinct;
        for (const auto& lit : flat.clauses[j].lits)
            if (std::find(distinct.begin(), distinct.end(), lit.var) == distinct.end())
                distinct.push_back(lit.var);
        for (const auto& v : distinct) g.edges.emplace_back(kv, var_path(v));
    }
    return g;
}

}  // namespace

TEST_CASE("h3f round trip") {
    HierFormula f = parse_formula(kNested);
    CHECK(f.cells.size() == 3);
    CHECK(f.cells[1].calls[0].instance == "c1");
    CHECK(f.cells[1].calls[1].instance == "c2");
    std::string text = serialize_formula(f);
    CHECK(parse_formula(text) == f);
    CHECK(serialize_formula(parse_formula(text)) == text);
}

TEST_CASE("h3f parse failures") {
    CHECK_THROWS_AS(parse_formula("h3f 2\n"), Error);
    CHECK_THROWS_AS(parse_formula("h3f 1\nformula A ( )\n"), Error);  // unterminated
    CHECK_THROWS_AS(parse_formula("h3f 1\nformula A ( )\nvertex x\nend\n"), Error);
    CHECK_THROWS_AS(parse_formula("h3f 1\nformula A ( )\nvar a\nvar b\nvar c\nvar d\n"
                                  "clause a b c d\nend\n"),
                    Error);
}

TEST_CASE("formula validation rules") {
    HierFormula f = parse_formula(kNested);

    SUBCASE("clause-width") {
        f.cells[0].clauses.push_back({});
        auto v = validate_formula(f);
        REQUIRE(v.size() == 1);
        CHECK(v[0].rule == "clause-width");
    }
    SUBCASE("clause-variable") {
        f.cells[0].clauses.push_back({{{"nope", false}}});
        auto v = validate_formula(f);
        REQUIRE(v.size() == 1);
        CHECK(v[0].rule == "clause-variable");
    }
    SUBCASE("distinct-names") {
        f.cells[0].locals.push_back("x1");  // collides with a param
        auto v = validate_formula(f);
        REQUIRE(v.size() == 1);
        CHECK(v[0].rule == "distinct-names");
    }
    SUBCASE("call-arity") {
        f.cells[2].calls[1].args.push_back("z6");
        auto v = validate_formula(f);
        REQUIRE(v.size() == 1);
        CHECK(v[0].rule == "call-arity");
    }
    SUBCASE("call-argument") {
        f.cells[2].calls[1].args[0] = "ghost";
        auto v = validate_formula(f);
        REQUIRE(v.size() == 1);
        CHECK(v[0].rule == "call-argument");
    }
    SUBCASE("call-order") {
        f.cells[0].calls.push_back({"c9", 2, {}});
        auto v = validate_formula(f);
        CHECK(v[0].rule == "call-order");
    }
    SUBCASE("root-has-params") {
        f.cells[2].params.push_back("y");
        auto v = validate_formula(f);
        REQUIRE(v.size() == 1);
        CHECK(v[0].rule == "root-has-params");
    }
    SUBCASE("unreachable-cell") {
        f.cells[2].calls.pop_back();
        f.cells[2].calls[0].callee = 0;
        f.cells[2].calls[0].args.resize(2);
        f.cells[2].calls[0].args = {"z8", "z7"};
        auto v = validate_formula(f);
        REQUIRE(v.size() == 1);
        CHECK(v[0].rule == "unreachable-cell");
        CHECK(v[0].cell == 1);
    }
    SUBCASE("empty-formula") {
        auto v = validate_formula(HierFormula{});
        REQUIRE(v.size() == 1);
        CHECK(v[0].rule == "empty-formula");
    }
}

TEST_CASE("nested formula expands to exactly seven clauses") {
    HierFormula f = parse_formula(kNested);
    CHECK(expansion_clause_count(f) == 7);
    FlatCnf flat = expand_formula(f, BigInt(100));
    REQUIRE(flat.clauses.size() == 7);
    CHECK(flat.variables.size() == 14);
    // spot-check substitution through two call levels
    CHECK(flat.clauses[1].lits[0].var == "z8");       // F1's x1 via F2's x3
    CHECK(flat.clauses[1].lits[1].var == "c1/z4");    // F1's x2 via F2's local
    CHECK(flat.clauses[1].lits[2].var == "c1/c1/z1");
    CHECK(flat.clause_owner == std::vector<std::string>{"c1", "c1/c1", "c1/c1", "c1/c2",
                                                        "c1/c2", "c2", "c2"});
    CHECK_THROWS_AS(expand_formula(f, BigInt(6)), Error);

    HierSatResult r = hmax_3sat(f);
    CHECK(r.heu == 7);  // every clause satisfied through its star centre
    auto as = hier_assignment(r, f, flat);
    CHECK(satisfied_count(flat, as) == 7);
}

TEST_CASE("query_assignment resolves parameters through the call chain") {
    HierFormula f = parse_formula(kNested);
    HierSatResult r = hmax_3sat(f);
    // c1/c1/x1 is F1's first param, fed F2's x3, fed the root local z8
    CHECK(query_assignment(r, f, parse_path("c1/c1/x1")) ==
          query_assignment(r, f, parse_path("z8")));
    CHECK_THROWS_AS(query_assignment(r, f, parse_path("c9/z1")), Error);
    CHECK_THROWS_AS(query_assignment(r, f, parse_path("ghost")), Error);
}

TEST_CASE("fmax_3sat star decomposition") {
    FlatCnf cnf;
    cnf.variables = {"a", "b"};
    cnf.clauses.push_back({{{"a", true}, {"b", false}}});
    cnf.clauses.push_back({{{"a", true}}});
    cnf.clauses.push_back({{{"a", false}}});
    cnf.clause_owner = {"", "", ""};
    FlatSatResult r = fmax_3sat(cnf, cnf.variables);
    CHECK(r.assignment.at("a") == false);  // two negated centres beat one positive
    CHECK(r.assignment.at("b") == true);   // tie goes to true
    CHECK(r.heu == 2);
    CHECK(satisfied_count(cnf, r.assignment) == 2);
}

TEST_CASE("hierarchical heuristic equals the flat one") {
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        HierFormula f = random_formula(seed);
        FlatCnf flat = expand_formula(f, BigInt(1000000));
        FlatSatResult fr = fmax_3sat(flat, flat.variables);
        HierSatResult hr = hmax_3sat(f);
        CHECK(hr.heu == fr.heu);
        auto as = hier_assignment(hr, f, flat);
        CHECK(as == fr.assignment);
        long long sat = satisfied_count(flat, as);
        CHECK(BigInt(sat) >= hr.heu);
        long long m = static_cast<long long>(flat.clauses.size());
        CHECK(BigInt(2) * hr.heu >= m);  // heu >= ceil(m / 2)
        if (flat.variables.size() <= 22) CHECK(exact_max_3sat(flat) >= hr.heu);
    }
}

TEST_CASE("bipartite transform matches the expanded incidence graph") {
    HierFormula f = parse_formula(kNested);
    HierSpec spec = tform(f);
    REQUIRE(validate(spec).empty());
    CHECK(spec.cells[0].pins == std::vector<std::string>{"v_x1", "v_x2"});
    CHECK(spec.cells[0].explicit_vertices ==
          std::vector<std::string>{"v_z1", "v_z2", "v_z3", "k_1", "k_2"});
    FlatGraph got = expand(spec, BigInt(1000000));
    FlatGraph want = bipartite_of(expand_formula(f, BigInt(1000000)));
    CHECK(multigraph_equal(got, want));

    for (uint64_t seed = 1; seed <= 15; ++seed) {
        HierFormula rf = random_formula(seed);
        HierSpec rs;
        try {
            rs = tform(rf);
        } catch (const Error& e) {
            CHECK(e.code() == "repeated-arg");
            continue;
        }
        CHECK(multigraph_equal(expand(rs, BigInt(1000000)),
                               bipartite_of(expand_formula(rf, BigInt(1000000)))));
    }
}

TEST_CASE("tform rejects repeated arguments") {
    HierFormula f = parse_formula(
        "h3f 1\n"
        "formula A ( p q )\n"
        "clause p q\n"
        "end\n"
        "formula R ( )\n"
        "var x\n"
        "call A ( x x )\n"
        "end\n");
    try {
        tform(f);
        FAIL("expected repeated-arg");
    } catch (const Error& e) {
        CHECK(e.code() == "repeated-arg");
    }
}
