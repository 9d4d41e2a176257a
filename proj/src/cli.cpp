#include "tautrel/cli.hpp"

#include "tautrel/chiodo.hpp"
#include "tautrel/error.hpp"
#include "tautrel/json_io.hpp"
#include "tautrel/relgen.hpp"
#include "tautrel/verify.hpp"
#include "tautrel/wk.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <fstream>
#include <iostream>

namespace tautrel::cli {

namespace {

struct SpecArgs {
    RelationSpec spec;
    std::vector<int> a;
};

void add_spec_options(CLI::App* cmd, SpecArgs& s, bool with_d = true)
{
    cmd->add_option("--g", s.spec.g, "genus")->required();
    cmd->add_option("--n", s.spec.n, "number of marked points")->required();
    cmd->add_option("--r", s.spec.r, "order of the cyclic group")->required();
    cmd->add_option("--a", s.a, "residues a_1,...,a_n")->delimiter(',');
    if (with_d)
        cmd->add_option("--d", s.spec.d, "degree")->required();
}

RelationSpec finish(SpecArgs& s)
{
    s.spec.a = s.a;
    return s.spec;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Generate and check tautological relations coming from r-th roots of line bundles"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out_file;
    app.add_option("--out", out_file, "write JSON to FILE instead of stdout");

    SpecArgs gen_args, ver_args, chern_args;
    bool allow_out_of_window = false;
    std::size_t max_graphs = 0, max_terms = 0;
    int threads = 0;

    auto* gen = app.add_subcommand("generate", "pushed-forward relation as a list of decorated strata");
    add_spec_options(gen, gen_args);
    gen->add_flag("--nontrivial-component", gen_args.spec.nontrivial_component);
    gen->add_option("--max-terms", max_terms, "cap on product sizes (0 = none)");

    auto* ver = app.add_subcommand("verify", "pair the relation with every complementary monomial");
    add_spec_options(ver, ver_args);
    ver->add_flag("--nontrivial-component", ver_args.spec.nontrivial_component);
    ver->add_flag("--allow-out-of-window", allow_out_of_window, "accept degrees up to the virtual rank");
    ver->add_option("--max-graphs", max_graphs, "cap on the number of stable graphs (0 = none)");
    ver->add_option("--max-terms", max_terms, "cap on product sizes (0 = none)");
    ver->add_option("--threads", threads, "OpenMP threads (0 = default)");

    int int_genus = 0;
    std::vector<int> psi, kappa;
    auto* inter = app.add_subcommand("intersect", "psi/kappa intersection number");
    inter->add_option("--g", int_genus, "genus")->required();
    inter->add_option("--psi", psi, "psi exponents, one per marked point")->delimiter(',')->required();
    inter->add_option("--kappa", kappa, "kappa indices")->delimiter(',');

    int graph_genus = 0, graph_n = 0, max_edges = -1;
    auto* graphs = app.add_subcommand("graphs", "stable graphs up to isomorphism");
    graphs->add_option("--g", graph_genus, "genus")->required();
    graphs->add_option("--n", graph_n, "number of marked points")->required();
    graphs->add_option("--max-edges", max_edges, "default: 3g-3+n");

    auto* chern = app.add_subcommand("chern", "Chern character of the pushforward of the universal root");
    add_spec_options(chern, chern_args);
    chern->add_flag("--nontrivial-component", chern_args.spec.nontrivial_component);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&) {
        out << app.help();
        return success;
    }
    catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return validation_error;
    }

    nlohmann::json result;
    int code = success;
    try {
        if (*gen) {
            RelationSpec s = finish(gen_args);
            MultiplyOptions opts;
            opts.max_terms = max_terms;
            TautExpr rel = pushforward_relation(s, false, opts);
            result = {{"spec", to_json(s)}, {"degree", s.d}, {"terms", to_json(rel)}};
        }
        else if (*ver) {
            RelationSpec s = finish(ver_args);
            VerifyOptions opts;
            opts.allow_out_of_window = allow_out_of_window;
            opts.max_graphs = max_graphs;
            opts.max_terms = max_terms;
            if (threads > 0)
                omp_set_num_threads(threads);
            VerificationReport report = verify(s, opts);
            result = to_json(report);
            if (!report.all_zero)
                code = nonzero_pairing;
        }
        else if (*inter) {
            Rational value = kappa_psi_integral({int_genus, psi, kappa});
            result = {{"g", int_genus}, {"psi", psi}, {"kappa", kappa}, {"value", to_string(value)}};
        }
        else if (*graphs) {
            const int dim = 3 * graph_genus - 3 + graph_n;
            if (max_edges > dim)
                throw ParameterError("--max-edges exceeds 3g-3+n = " + std::to_string(dim));
            auto list = enumerate_stable_graphs(graph_genus, graph_n, max_edges < 0 ? dim : max_edges);
            nlohmann::json items = nlohmann::json::array();
            for (const auto& G : list) {
                auto j = to_json(G);
                j["aut_order"] = aut_order(G);
                items.push_back(j);
            }
            result = {{"g", graph_genus}, {"n", graph_n}, {"count", list.size()}, {"graphs", items}};
        }
        else if (*chern) {
            RelationSpec s = finish(chern_args);
            validate_spec(s, true);
            result = {{"spec", to_json(s)}, {"chern_character", to_json(chiodo_chern_char(s, s.d))}};
        }
    }
    catch (const LimitError& e) {
        err << "limit exceeded: " << e.what() << '\n';
        return limit_exceeded;
    }
    catch (const ParameterError& e) {
        err << "invalid input: " << e.what() << '\n';
        return validation_error;
    }
    catch (const DimensionError& e) {
        err << "invalid input: " << e.what() << '\n';
        return validation_error;
    }

    if (out_file.empty()) {
        out << result.dump(2) << '\n';
    }
    else {
        std::ofstream file(out_file);
        if (!file) {
            err << "cannot write " << out_file << '\n';
            return validation_error;
        }
        file << result.dump(2) << '\n';
    }
    return code;
}

} // namespace tautrel::cli
