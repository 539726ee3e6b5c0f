#include <doctest.h>

#include <set>

#include "hg/oracle.hpp"
#include "hg/specmodel.hpp"

using namespace hg;

namespace {

bool has_rule(const std::vector<Violation>& v, const std::string& rule) {
    for (const auto& x : v)
        if (x.rule == rule) return true;
    return false;
}

}  // namespace

TEST_CASE("hgs round trip") {
    HierSpec chain = chain_fixture(3);
    std::string text = serialize_spec(chain);
    HierSpec back = parse_spec(text);
    CHECK(back == chain);
    CHECK(serialize_spec(back) == text);

    HierSpec tower = tower_fixture(4);
    CHECK(parse_spec(serialize_spec(tower)) == tower);
}

TEST_CASE("parser accepts comments, blank lines, out-of-order bind blocks") {
    std::string text =
        "# leading comment\n"
        "hgs 1\n"
        "\n"
        "cell A\n"
        "pin a\n"
        "vertex u # trailing comment\n"
        "edge a u\n"
        "end\n"
        "cell B\n"
        "vertex w\n"
        "nonterm I : A\n"
        "bind I 1 w\n"
        "end\n";
    HierSpec s = parse_spec(text);
    CHECK(s.cells.size() == 2);
    CHECK(s.cells[1].nonterminals[0].binding == std::vector<std::string>{"w"});
}

TEST_CASE("parser failures carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_spec("hgs 2\n"), doctest::Contains("line 1"), Error);
    CHECK_THROWS_AS(parse_spec(""), Error);
    try {
        parse_spec("hgs 1\ncell A\nvertex u\nedge u\nend\n");
        FAIL("expected parse error");
    } catch (const Error& e) {
        CHECK(e.code() == "parse-error");
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
    // bind before its nonterminal is declared
    CHECK_THROWS_AS(parse_spec("hgs 1\ncell A\nvertex u\nbind I 1 u\nend\n"), Error);
}

TEST_CASE("validation rules fire individually") {
    CHECK(has_rule(validate(HierSpec{}), "empty-spec"));

    HierSpec s = chain_fixture(2);
    SUBCASE("duplicate cell name") {
        s.cells[1].name = "C1";
        CHECK(has_rule(validate(s), "duplicate-cell"));
    }
    SUBCASE("bad identifier") {
        s.cells[0].explicit_vertices.push_back("bad-name");
        CHECK(has_rule(validate(s), "bad-identifier"));
    }
    SUBCASE("reused local name") {
        s.cells[0].explicit_vertices.push_back("a");
        CHECK(has_rule(validate(s), "distinct-names"));
    }
    SUBCASE("edge endpoint must be a terminal") {
        s.cells[1].edges.push_back({"I", "u"});
        CHECK(has_rule(validate(s), "edge-endpoint"));
    }
    SUBCASE("self loop") {
        s.cells[0].edges.push_back({"u", "u"});
        CHECK(has_rule(validate(s), "self-loop"));
    }
    SUBCASE("duplicate edge either orientation") {
        s.cells[0].edges.push_back({"v", "u"});
        CHECK(has_rule(validate(s), "duplicate-edge"));
    }
    SUBCASE("call order") {
        s.cells[0].nonterminals.push_back({"J", 0, {}});
        CHECK(has_rule(validate(s), "call-order"));
    }
    SUBCASE("binding total") {
        s.cells[1].nonterminals[0].binding.clear();
        CHECK(has_rule(validate(s), "binding-total"));
    }
    SUBCASE("binding target") {
        s.cells[1].nonterminals[0].binding = {"I"};
        CHECK(has_rule(validate(s), "binding-target"));
    }
    SUBCASE("binding injective") {
        s.cells[0].pins.push_back("b");
        s.cells[1].nonterminals[0].binding = {"v", "v"};
        CHECK(has_rule(validate(s), "binding-injective"));
    }
    SUBCASE("unreachable cell") {
        s.cells.insert(s.cells.begin(), chain_fixture(1).cells[0]);
        s.cells[0].name = "Z";
        for (auto& c : s.cells)
            for (auto& nt : c.nonterminals) ++nt.callee;
        CHECK(has_rule(validate(s), "unreachable-cell"));
    }
    SUBCASE("fixture is valid") { CHECK(validate(s).empty()); }
}

TEST_CASE("require_valid throws a coded error") {
    HierSpec s = chain_fixture(2);
    s.cells[0].edges.push_back({"u", "u"});
    try {
        require_valid(s);
        FAIL("expected invalid-spec");
    } catch (const Error& e) {
        CHECK(e.code() == "invalid-spec");
    }
}

TEST_CASE("stats on CHAIN_3") {
    SpecStats st = stats(chain_fixture(3));
    CHECK(st.N == 10);
    CHECK(st.M == 7);
    CHECK(st.size == 17);
    CHECK(st.expansion_vertices == 6);
    CHECK(st.expansion_edges == 5);
    CHECK(st.max_degree == 2);
}

TEST_CASE("stats recurrences on towers") {
    // non-root level i expands to 2^(i+1)-1 vertices, the root to 2^(k+1)-2
    for (int k : {1, 2, 3, 4, 7}) {
        SpecStats st = stats(tower_fixture(k));
        BigInt expect_v = k == 1 ? BigInt(2) : (BigInt(1) << (k + 1)) - 2;
        BigInt expect_e = k == 1 ? BigInt(1) : (BigInt(1) << (k + 1)) - 3;
        CHECK(st.expansion_vertices == expect_v);
        CHECK(st.expansion_edges == expect_e);
        if (k >= 3) CHECK(st.max_degree == 3);
    }
    SUBCASE("per-cell counts at k=3") {
        SpecStats st = stats(tower_fixture(3));
        CHECK(st.per_cell[0].expansion_vertices == 3);
        CHECK(st.per_cell[1].expansion_vertices == 7);
        CHECK(st.per_cell[0].n == 3);
        CHECK(st.per_cell[1].n == 5);
        CHECK(st.per_cell[1].m == 4);  // two edges plus two one-pin callees
    }
}

TEST_CASE("stats stay polynomial at depth 40") {
    SpecStats st = stats(tower_fixture(40));
    CHECK(st.expansion_vertices == (BigInt(1) << 41) - 2);
    CHECK(to_decimal(st.expansion_vertices) == "2199023255550");
}

TEST_CASE("pin degrees feed the degree recurrence") {
    SpecStats st = stats(chain_fixture(3));
    CHECK(st.pin_degree[0] == std::vector<BigInt>{1});  // C1 pin a touches u only
    CHECK(st.pin_degree[1] == std::vector<BigInt>{1});
}

TEST_CASE("fixture shapes") {
    HierSpec pp = pinpair_fixture();
    CHECK(pp.cells.size() == 3);
    CHECK(validate(pp).empty());
    CHECK(stats(pp).expansion_vertices == 3);
    CHECK(stats(pp).expansion_edges == 3);

    HierSpec mu = multi_fixture();
    CHECK(validate(mu).empty());
    CHECK(stats(mu).expansion_vertices == 3);
    CHECK(stats(mu).expansion_edges == 4);

    CHECK(chain_fixture(1).cells.size() == 1);
    CHECK_THROWS_AS(chain_fixture(0), Error);
    CHECK_THROWS_AS(tower_fixture(-2), Error);
}

TEST_CASE("hierarchy tree enumerates instances") {
    CHECK(hierarchy_tree_size(tower_fixture(3)) == 7);
    CHECK(hierarchy_tree_size(chain_fixture(4)) == 4);
    HierarchyNode root = hierarchy_tree(tower_fixture(3), BigInt(100));
    CHECK(root.children.size() == 2);
    CHECK(root.children[0].instance == "I1");
    CHECK(root.children[0].children.size() == 2);
    CHECK_THROWS_AS(hierarchy_tree(tower_fixture(30), BigInt(1000)), Error);
}

TEST_CASE("vertex path labels") {
    VertexPath v{{"J", "I"}, "w"};
    CHECK(v.label() == "J/I/w");
    CHECK(parse_path("J/I/w") == v);
    CHECK(parse_path("x") == VertexPath{{}, "x"});
}

TEST_CASE("identifiers") {
    CHECK(is_identifier("a_b9"));
    CHECK(is_identifier("9a"));  // digits anywhere; fields are positional
    CHECK(!is_identifier(""));
    CHECK(!is_identifier("a/b"));
    CHECK(!is_identifier("a b"));
}
