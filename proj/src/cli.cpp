// Subcommand front end over the library: parse, dispatch, print, map errors to
// exit codes (0 ok, 1 domain, 2 usage).

#include "hg/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "hg/expand.hpp"
#include "hg/hardgen.hpp"
#include "hg/hiersat.hpp"
#include "hg/hsolution.hpp"
#include "hg/indset.hpp"
#include "hg/maxcut.hpp"
#include "hg/oracle.hpp"
#include "hg/simplify.hpp"
#include "hg/specmodel.hpp"
#include "hg/vcover.hpp"

namespace hg {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io", "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::pair<long long, long long> parse_eps(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == s.size())
        throw Error("bad-eps", "expected P/Q, got '" + s + "'");
    long long p = 0, q = 0;
    try {
        size_t used = 0;
        p = std::stoll(s.substr(0, slash), &used);
        if (used != slash) throw std::invalid_argument("");
        std::string den = s.substr(slash + 1);
        q = std::stoll(den, &used);
        if (used != den.size()) throw std::invalid_argument("");
    } catch (const Error&) {
        throw;
    } catch (...) {
        throw Error("bad-eps", "expected P/Q, got '" + s + "'");
    }
    if (p < 1 || q < 1) throw Error("bad-eps", "epsilon must be a positive rational");
    return {p, q};
}

HierSpec load_spec(const std::string& path, bool simplify_first) {
    HierSpec spec = parse_spec(read_file(path));
    require_valid(spec);
    if (simplify_first) spec = make_simple(spec);
    return spec;
}

std::string fixture_payload(const std::string& name, uint64_t seed) {
    auto numbered = [&](const std::string& prefix) -> int {
        std::string tail = name.substr(prefix.size());
        try {
            size_t used = 0;
            int k = std::stoi(tail, &used);
            if (used != tail.size()) throw std::invalid_argument("");
            return k;
        } catch (...) {
            throw Error("bad-argument", "bad fixture index in '" + name + "'");
        }
    };
    if (name.rfind("CHAIN_", 0) == 0) return serialize_spec(chain_fixture(numbered("CHAIN_")));
    if (name.rfind("TOWER_", 0) == 0) return serialize_spec(tower_fixture(numbered("TOWER_")));
    if (name == "PINPAIR_1") return serialize_spec(pinpair_fixture());
    if (name == "MULTI_1") return serialize_spec(multi_fixture());
    if (name == "RANDOM_SIMPLE") return serialize_spec(random_simple_spec(seed));
    if (name == "RANDOM_PINEDGE") return serialize_spec(random_pin_edge_spec(seed));
    if (name == "RANDOM_FORMULA") return serialize_formula(random_formula(seed));
    throw Error("bad-argument", "unknown fixture '" + name + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"hierarchical specification toolkit"};
    app.require_subcommand(1);

    std::string in_path, sol_path, out_path, vertex, eps = "1/1", fixture_name;
    std::string val_format = "hgs", exp_format = "hgs", emit_format = "hsol",
                lp_format = "hlp";
    long long limit_vertices = 1000000, limit_clauses = 1000000, limit_gates = 1000000,
              limit_nodes = 1000000, degree_bound = -1;
    uint64_t seed = 1;
    bool simplify_first = false;
    std::string payload;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("file", in_path, "input file")->required();
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("-o,--output", out_path, "write standard output to this file");
    };
    auto positive = CLI::PositiveNumber;

    CLI::App* sc = app.add_subcommand("validate", "check an input file");
    add_input(sc);
    sc->add_option("--format", val_format, "hgs|hsol|h3f|hcirc|hlp")->capture_default_str();
    sc->callback([&] {
        if (val_format == "hgs") {
            HierSpec spec = parse_spec(read_file(in_path));
            require_valid(spec);
        } else if (val_format == "hsol") {
            parse_solution(read_file(in_path));
        } else if (val_format == "h3f") {
            parse_formula(read_file(in_path));
        } else if (val_format == "hcirc") {
            parse_circuit(read_file(in_path));
        } else if (val_format == "hlp") {
            parse_lp(read_file(in_path));
        } else {
            throw Error("bad-argument", "unknown format '" + val_format + "'");
        }
        payload = "ok\n";
    });

    sc = app.add_subcommand("stats", "size and expansion measures of a spec");
    add_input(sc);
    add_output(sc);
    sc->callback([&] {
        HierSpec spec = load_spec(in_path, false);
        SpecStats st = stats(spec);
        std::ostringstream ss;
        ss << "N " << st.N << "\nM " << st.M << "\nsize " << st.size << "\nexpansion_vertices "
           << to_decimal(st.expansion_vertices) << "\nexpansion_edges "
           << to_decimal(st.expansion_edges) << "\nmax_degree " << to_decimal(st.max_degree)
           << "\n";
        payload = ss.str();
    });

    sc = app.add_subcommand("expand", "flatten a spec or formula");
    add_input(sc);
    add_output(sc);
    sc->add_option("--format", exp_format, "hgs|h3f input format")->capture_default_str();
    sc->add_option("--limit-vertices", limit_vertices, "expansion vertex budget")
        ->check(positive);
    sc->add_option("--limit-clauses", limit_clauses, "expansion clause budget")
        ->check(positive);
    sc->callback([&] {
        if (exp_format == "hgs") {
            HierSpec spec = load_spec(in_path, false);
            payload = export_flat_graph(expand(spec, BigInt(limit_vertices)));
        } else if (exp_format == "h3f") {
            HierFormula f = parse_formula(read_file(in_path));
            FlatCnf cnf = expand_formula(f, BigInt(limit_clauses));
            std::ostringstream ss;
            for (const auto& v : cnf.variables) ss << "var " << v << "\n";
            for (const auto& cl : cnf.clauses) {
                ss << "clause";
                for (const auto& lit : cl.lits) ss << ' ' << (lit.negated ? "!" : "") << lit.var;
                ss << "\n";
            }
            payload = ss.str();
        } else {
            throw Error("bad-argument", "unknown format '" + exp_format + "'");
        }
    });

    sc = app.add_subcommand("simplify", "remove pin-pin edges, preserving the expansion");
    add_input(sc);
    add_output(sc);
    sc->callback([&] { payload = serialize_spec(make_simple(load_spec(in_path, false))); });

    sc = app.add_subcommand("vc", "vertex cover heuristic");
    add_input(sc);
    add_output(sc);
    sc->add_flag("--simplify", simplify_first, "apply the simplifier first");
    sc->callback([&] {
        VcResult r = hvc(load_spec(in_path, simplify_first));
        payload = "psi " + to_decimal(r.psi) + "\n" + serialize_solution(r.solution);
    });

    sc = app.add_subcommand("mmm", "minimum maximal matching size");
    add_input(sc);
    add_output(sc);
    sc->add_flag("--simplify", simplify_first, "apply the simplifier first");
    sc->callback([&] {
        payload =
            "size " + to_decimal(min_maximal_matching_size(load_spec(in_path, simplify_first))) +
            "\n";
    });

    sc = app.add_subcommand("maxcut", "max cut heuristic");
    add_input(sc);
    add_output(sc);
    sc->add_flag("--simplify", simplify_first, "apply the simplifier first");
    sc->callback([&] {
        CutResult r = hmax_cut(load_spec(in_path, simplify_first));
        payload = "E " + to_decimal(r.E_n) + "\n" + serialize_solution(r.solution);
    });

    sc = app.add_subcommand("mis", "bounded-degree independent set heuristic");
    add_input(sc);
    add_output(sc);
    sc->add_flag("--simplify", simplify_first, "apply the simplifier first");
    sc->add_option("--degree-bound", degree_bound, "expected degree bound B")->check(positive);
    sc->callback([&] {
        SetResult r = hind_set(load_spec(in_path, simplify_first));
        if (degree_bound >= 0 && BigInt(degree_bound) != r.B)
            throw Error("degree-bound", "computed bound " + to_decimal(r.B) +
                                            " differs from requested " +
                                            std::to_string(degree_bound));
        payload = "size_V " + to_decimal(r.size_V) + "\nB " + to_decimal(r.B) + "\n" +
                  serialize_solution(r.solution);
    });

    sc = app.add_subcommand("maxsat", "MAX 3SAT heuristic on a hierarchical formula");
    add_input(sc);
    add_output(sc);
    sc->callback([&] {
        HierSatResult r = hmax_3sat(parse_formula(read_file(in_path)));
        payload = "heu " + to_decimal(r.heu) + "\n" + serialize_solution(r.solution);
    });

    sc = app.add_subcommand("query", "membership of one expansion vertex in a solution");
    add_input(sc);
    sc->add_option("solution", sol_path, "solution file")->required();
    sc->add_option("--vertex", vertex, "path inst1/inst2/name")->required();
    add_output(sc);
    sc->callback([&] {
        HierSpec spec = load_spec(in_path, false);
        HSolution sol = parse_solution(read_file(sol_path));
        payload = query(sol, spec, parse_path(vertex)) ? "1\n" : "0\n";
    });

    sc = app.add_subcommand("emit", "stream or flatten a solution");
    sc->add_option("solution", sol_path, "solution file")->required();
    add_output(sc);
    sc->add_option("--format", emit_format, "hsol (stream order) | flat (sorted)")
        ->capture_default_str();
    sc->add_option("--limit-nodes", limit_nodes, "mirrored tree node budget")->check(positive);
    sc->add_option("--limit-vertices", limit_vertices, "selected vertex budget")
        ->check(positive);
    sc->callback([&] {
        HSolution sol = parse_solution(read_file(sol_path));
        std::ostringstream ss;
        if (emit_format == "hsol") {
            stream(sol, BigInt(limit_nodes),
                   [&](const VertexPath& v) { ss << v.label() << "\n"; });
        } else if (emit_format == "flat") {
            for (const auto& v : flatten(sol, BigInt(limit_vertices))) ss << v.label() << "\n";
        } else {
            throw Error("bad-argument", "unknown format '" + emit_format + "'");
        }
        payload = ss.str();
    });

    auto load_circuit = [&]() {
        HierCircuit c = parse_circuit(read_file(in_path));
        BigInt count = expansion_gate_count(c);
        if (count > BigInt(limit_gates))
            throw Error("limit-exceeded", "input expands to " + to_decimal(count) +
                                              " gates, limit " + std::to_string(limit_gates));
        return c;
    };
    auto add_gate_limit = [&](CLI::App* sub) {
        sub->add_option("--limit-gates", limit_gates, "input expansion gate budget")
            ->check(positive);
    };

    sc = app.add_subcommand("gen-mtg", "chain-augmented circuit family");
    add_input(sc);
    add_output(sc);
    add_gate_limit(sc);
    sc->callback([&] {
        MtgInstance mtg = gen_mtg_chain(load_circuit());
        payload = "# chain_length " + to_decimal(mtg.chain_length) + "\n" +
                  serialize_circuit(mtg.D);
    });

    sc = app.add_subcommand("gen-mtg-flat", "flat chain-augmented circuit");
    add_input(sc);
    add_output(sc);
    add_gate_limit(sc);
    sc->add_option("--eps", eps, "approximation gap P/Q")->capture_default_str();
    sc->callback([&] {
        auto [p, q] = parse_eps(eps);
        payload = serialize_circuit(flat_mtg_chain(load_circuit(), p, q));
    });

    sc = app.add_subcommand("gen-lp", "hierarchical linear program of a circuit");
    add_input(sc);
    add_output(sc);
    add_gate_limit(sc);
    sc->add_option("--format", lp_format, "hlp | flat")->capture_default_str();
    sc->add_option("--limit-vertices", limit_vertices, "flat variable budget")
        ->check(positive);
    sc->callback([&] {
        HlpSpec lp = gen_hlp(load_circuit());
        if (lp_format == "hlp")
            payload = serialize_lp(lp);
        else if (lp_format == "flat")
            payload = export_flat_lp(expand_lp(lp, BigInt(limit_vertices)));
        else
            throw Error("bad-argument", "unknown format '" + lp_format + "'");
    });

    sc = app.add_subcommand("fixtures", "write a named fixture");
    sc->add_option("name", fixture_name, "CHAIN_k | TOWER_k | PINPAIR_1 | MULTI_1 | RANDOM_*")
        ->required();
    sc->add_option("--seed", seed, "generator seed for RANDOM_* fixtures");
    add_output(sc);
    sc->callback([&] { payload = fixture_payload(fixture_name, seed); });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << "\n";
        return 2;
    } catch (const hg::Error& e) {
        err << "error: " << e.code() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << "\n";
        return 1;
    }

    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            err << "error: io: cannot write '" << out_path << "'\n";
            return 1;
        }
        f << payload;
    } else {
        out << payload;
    }
    return 0;
}

}  // namespace hg
