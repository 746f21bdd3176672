// Command-line driver for the two-asset option finite-volume solver.
// Builds a flat key=value configuration from flags and hands it to the
// shared-library C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bsfv/bsfv.h"

namespace {

struct CommonArgs {
    std::string preset;
    std::string config_file;
    std::string scheme;
    std::vector<int> n_values;
    std::string theta;
    std::string dtau;
    std::string x_max, y_max;
    std::string sigma1, sigma2, rho, r, strike, maturity;
    std::string grid_kind;
    std::string grade_focus, grade_strength;
    std::string upwind1;
    std::string velocity_eval;
    std::string variant;
    bool zero_axis_boundary = false;
    std::string out_path;
};

void add_common_options(CLI::App& cmd, CommonArgs& args, bool n_is_list) {
    cmd.add_option("--preset", args.preset,
                   "Named configuration: table1..table5, fig1..fig3");
    cmd.add_option("--config", args.config_file, "key=value configuration file")
        ->check(CLI::ExistingFile);
    cmd.add_option("--scheme", args.scheme,
                   "mpfa-up1 | mpfa-up2 | fitted-mpfa-up1 | fitted-mpfa-up2");
    if (n_is_list) {
        cmd.add_option("--n", args.n_values, "Interior nodes per axis (repeatable)");
    } else {
        cmd.add_option("--n", args.n_values, "Interior nodes per axis")->expected(1);
    }
    cmd.add_option("--theta", args.theta, "Time integrator blend in [0,1]");
    cmd.add_option("--dtau", args.dtau, "Requested time step");
    cmd.add_option("--x-max", args.x_max, "Domain bound in x");
    cmd.add_option("--y-max", args.y_max, "Domain bound in y");
    cmd.add_option("--sigma1", args.sigma1, "Volatility of asset 1");
    cmd.add_option("--sigma2", args.sigma2, "Volatility of asset 2");
    cmd.add_option("--rho", args.rho, "Correlation");
    cmd.add_option("--r", args.r, "Risk-free rate");
    cmd.add_option("--strike", args.strike, "Strike");
    cmd.add_option("--maturity", args.maturity, "Time to expiry in years");
    cmd.add_option("--grid", args.grid_kind, "uniform | graded");
    cmd.add_option("--grade-focus", args.grade_focus, "Refinement focus coordinate");
    cmd.add_option("--grade-strength", args.grade_strength, "Refinement strength (0 = uniform)");
    cmd.add_option("--upwind1", args.upwind1, "donor | squared");
    cmd.add_option("--velocity-eval", args.velocity_eval, "node | midpoint");
    cmd.add_option("--variant", args.variant, "Closed form: standard | discounted");
    cmd.add_flag("--zero-axis-boundary", args.zero_axis_boundary,
                 "Force x=0 / y=0 edges to zero");
}

/// Flat key=value config: preset first, then the config file, then flags.
std::string build_config_text(const CommonArgs& args) {
    std::ostringstream text;
    if (!args.preset.empty()) text << "preset=" << args.preset << "\n";
    if (!args.config_file.empty()) {
        std::ifstream in(args.config_file);
        if (!in.is_open()) {
            throw CLI::ValidationError("--config", "cannot read " + args.config_file);
        }
        text << in.rdbuf() << "\n";
    }
    auto put = [&text](const char* key, const std::string& value) {
        if (!value.empty()) text << key << "=" << value << "\n";
    };
    put("scheme", args.scheme);
    if (!args.n_values.empty()) {
        text << "n=";
        for (std::size_t k = 0; k < args.n_values.size(); ++k) {
            if (k > 0) text << ",";
            text << args.n_values[k];
        }
        text << "\n";
    }
    put("theta", args.theta);
    put("dtau", args.dtau);
    put("x_max", args.x_max);
    put("y_max", args.y_max);
    put("sigma1", args.sigma1);
    put("sigma2", args.sigma2);
    put("rho", args.rho);
    put("r", args.r);
    put("strike", args.strike);
    put("maturity", args.maturity);
    put("grid", args.grid_kind);
    put("grade_focus", args.grade_focus);
    put("grade_strength", args.grade_strength);
    put("upwind1", args.upwind1);
    put("velocity_eval", args.velocity_eval);
    put("variant", args.variant);
    if (args.zero_axis_boundary) text << "zero_axis_boundary=1\n";
    return text.str();
}

int report(bsfv_status status, const char* action) {
    if (status == BSFV_OK) return 0;
    std::cerr << action << " failed: " << bsfv_last_error() << "\n";
    return 1;
}

int single_n(const CommonArgs& args) {
    if (args.n_values.size() == 1) return args.n_values.front();
    throw CLI::ValidationError("--n", "exactly one grid size is required here");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-volume pricer for two-asset max-call options"};
    app.require_subcommand(1);

    CommonArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "Run an error-table sweep, write CSV");
    add_common_options(*solve, solve_args, /*n_is_list=*/true);
    solve->add_option("--out", solve_args.out_path, "Output CSV path")->required();

    CommonArgs dump_args;
    CLI::App* dump = app.add_subcommand("dump", "Solve once and write the price surface");
    add_common_options(*dump, dump_args, /*n_is_list=*/false);
    dump->add_option("--out", dump_args.out_path, "Output surface path")->required();

    CommonArgs sparsity_args;
    CLI::App* sparsity =
        app.add_subcommand("sparsity", "Write the system operator pattern as row/col/value");
    add_common_options(*sparsity, sparsity_args, /*n_is_list=*/false);
    sparsity->add_option("--out", sparsity_args.out_path, "Output pattern path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            const std::string text = build_config_text(solve_args);
            return report(bsfv_run_experiment(text.c_str(), solve_args.out_path.c_str()),
                          "solve");
        }
        if (dump->parsed()) {
            const std::string text = build_config_text(dump_args);
            return report(
                bsfv_dump_surface(text.c_str(), single_n(dump_args), dump_args.out_path.c_str()),
                "dump");
        }
        if (sparsity->parsed()) {
            const std::string text = build_config_text(sparsity_args);
            return report(bsfv_dump_sparsity(text.c_str(), single_n(sparsity_args),
                                             sparsity_args.out_path.c_str()),
                          "sparsity");
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    }
    return 0;
}
