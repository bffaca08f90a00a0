// Command-line front end: `bergman run <config>` executes a batch experiment
// file; every experiment kind is also exposed as a subcommand whose flags
// mirror the config fields. Exit codes: 0 ok / all verifications passed,
// 1 verification failed, 2 config or usage error, 3 degree range error,
// 4 quadrature failure, 5 I/O error.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bergman/errors.hpp"
#include "bergman/runner.hpp"

namespace {

using bergman::cli::Config;
using bergman::cli::ExperimentSpec;

struct CommonFlags {
    std::string domain = "disc";
    std::string weight = "constant-one";
    std::string table;
    std::string out = "out";
    int max_degree = 20;
    double tol = 1e-10;
    uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--domain", flags.domain,
                    "domain record, e.g. 'disc', 'ball 2', 'polydisc 1 1', 'ellipsoid 2 2 1'");
    cmd->add_option("--weight", flags.weight,
                    "weight record: 'constant-one', 'power a', 'exponential b c', "
                    "'power-exponential a b c'");
    cmd->add_option("--table", flags.table, "load a saved moment table instead of building one");
    cmd->add_option("--out", flags.out, "output directory for CSV reports");
    cmd->add_option("--max-degree", flags.max_degree, "moment table degree box");
    cmd->add_option("--tol", flags.tol, "relative quadrature tolerance");
    cmd->add_option("--seed", flags.seed, "seed for randomized experiments");
}

Config base_config(const CommonFlags& flags) {
    // Route through the config-text parser so flags and config files share
    // one grammar and one set of error messages.
    std::ostringstream text;
    if (flags.table.empty()) {
        text << "domain " << flags.domain << "\n";
        text << "weight " << flags.weight << "\n";
    } else {
        text << "table " << flags.table << "\n";
    }
    text << "max_degree " << flags.max_degree << "\n";
    text << "tolerance " << flags.tol << "\n";
    text << "seed " << flags.seed << "\n";
    text << "output " << flags.out << "\n";
    return bergman::cli::parse_config_text(text.str(), "<flags>");
}

int run_with(Config config, const std::string& experiment_line) {
    std::ostringstream text;
    text << config.echo << "experiment " << experiment_line << "\n";
    Config full = bergman::cli::parse_config_text(text.str(), "<flags>");
    return bergman::cli::run(full, std::cout);
}

int dispatch(Config config, const std::string& experiment_line) {
    using namespace bergman;
    try {
        return run_with(std::move(config), experiment_line);
    } catch (const TableRangeError& e) {
        std::cerr << "range error: " << e.what() << "\n";
        return cli::kRangeError;
    } catch (const QuadratureError& e) {
        std::cerr << "quadrature error: " << e.what() << "\n";
        return cli::kQuadratureFailure;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kParseError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kIoError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "bergman: weighted Bergman projection diagnostics on convex Reinhardt domains.\n"
        "Computes weighted monomial moments, truncated kernels, projections and Sobolev\n"
        "norms, and verifies the inequality chain behind uniform W^k boundedness.\n\n"
        "Exit codes: 0 success, 1 verification failed, 2 config/usage error,\n"
        "            3 degree range error, 4 quadrature failure, 5 I/O error."};
    app.require_subcommand(1);

    // run <config>
    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "execute a batch experiment config file");
    run_cmd->add_option("config", config_path, "config file path")->required();

    CommonFlags flags;

    auto* moments_cmd = app.add_subcommand("moments", "build (or load) and dump a moment table");
    add_common(moments_cmd, flags);

    auto* pl_cmd = app.add_subcommand("verify-pl", "check the Prekopa-Leindler instances");
    int pl_grid = 2048;
    add_common(pl_cmd, flags);
    pl_cmd->add_option("--grid", pl_grid, "midpoint grid resolution");

    auto* lemma_cmd = app.add_subcommand("verify-lemma",
                                         "scan d_a d_{a+2b} / d_{a+b}^2 against [1, 4^|b|]");
    std::vector<int> beta;
    add_common(lemma_cmd, flags);
    lemma_cmd->add_option("--beta", beta, "direction multi-index components")->required();

    auto* scalar_cmd = app.add_subcommand("verify-scalar", "sweep the scalar midpoint inequality");
    long scalar_samples = 1000000;
    add_common(scalar_cmd, flags);
    scalar_cmd->add_option("--samples", scalar_samples, "random sample count");

    auto* mbeta_cmd = app.add_subcommand("mbeta-scan", "norm-ratio scan of the operator M_beta");
    add_common(mbeta_cmd, flags);
    mbeta_cmd->add_option("--beta", beta, "direction multi-index components")->required();

    auto* project_cmd = app.add_subcommand("project", "apply the Bergman projection to a polynomial");
    std::string poly_path;
    add_common(project_cmd, flags);
    project_cmd->add_option("--poly", poly_path, "polynomial record file")->required();

    auto* kernel_cmd = app.add_subcommand("kernel-eval", "evaluate the truncated kernel at (z, w)");
    int kernel_j = 0;
    std::vector<double> zw;
    add_common(kernel_cmd, flags);
    kernel_cmd->add_option("--degree", kernel_j, "truncation degree j")->required();
    kernel_cmd->add_option("--points", zw,
                           "4n reals: re/im per coordinate of z, then of w")->required();

    auto* sobolev_cmd = app.add_subcommand("sobolev-bound",
                                           "uniform boundedness experiment for d^beta o B");
    int sob_k = 1;
    int sob_input_degree = -1;
    int sob_count = 16;
    std::string sob_family = "pure-monomials";
    add_common(sobolev_cmd, flags);
    sobolev_cmd->add_option("--k", sob_k, "Sobolev order")->required();
    sobolev_cmd->add_option("--beta", beta, "derivative multi-index")->required();
    sobolev_cmd->add_option("--family", sob_family, "pure-monomials | random-mixed");
    sobolev_cmd->add_option("--input-degree", sob_input_degree,
                            "input degree cap (default max_degree / 2)");
    sobolev_cmd->add_option("--count", sob_count, "polynomials per degree for random-mixed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return bergman::cli::kParseError;
    }

    if (run_cmd->parsed()) return bergman::cli::run_config_file(config_path, std::cout);

    auto join = [](const std::vector<int>& v) {
        std::string s;
        for (int x : v) s += " " + std::to_string(x);
        return s;
    };

    try {
        if (moments_cmd->parsed()) return dispatch(base_config(flags), "moments");
        if (pl_cmd->parsed())
            return dispatch(base_config(flags), "verify-pl " + std::to_string(pl_grid));
        if (lemma_cmd->parsed())
            return dispatch(base_config(flags), "verify-lemma" + join(beta));
        if (scalar_cmd->parsed())
            return dispatch(base_config(flags), "verify-scalar " + std::to_string(scalar_samples));
        if (mbeta_cmd->parsed()) return dispatch(base_config(flags), "mbeta-scan" + join(beta));
        if (project_cmd->parsed()) return dispatch(base_config(flags), "project " + poly_path);
        if (kernel_cmd->parsed()) {
            std::string line = "kernel-eval " + std::to_string(kernel_j);
            for (double v : zw) {
                char buf[40];
                std::snprintf(buf, sizeof(buf), " %.17g", v);
                line += buf;
            }
            return dispatch(base_config(flags), line);
        }
        if (sobolev_cmd->parsed()) {
            std::string line = "sobolev-bound " + std::to_string(sob_k) + join(beta) + " " +
                               sob_family;
            if (sob_input_degree >= 0) {
                line += " " + std::to_string(sob_input_degree);
                line += " " + std::to_string(sob_count);
            }
            return dispatch(base_config(flags), line);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bergman::cli::kParseError;
    }
    return bergman::cli::kParseError;
}
