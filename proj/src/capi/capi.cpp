#include "bsfv/bsfv.h"

#include <cstdio>
#include <exception>
#include <fstream>
#include <string>
#include <utility>

#include "core/analytic.hpp"
#include "core/experiment.hpp"
#include "core/fitted.hpp"
#include "core/grid.hpp"
#include "core/mpfa.hpp"
#include "core/timestepper.hpp"

struct bsfv_grid {
    bsfv::TensorGrid grid;
};

struct bsfv_solution {
    bsfv::TensorGrid grid;
    bsfv::GridFunction numeric;
    bsfv::GridFunction analytic;
    bsfv::ErrorReport report;
};

namespace {

thread_local std::string g_last_error = "ok";

void set_error(const std::string& message) { g_last_error = message; }

bsfv_status map_status(bsfv::Status status) {
    switch (status) {
        case bsfv::Status::Ok: return BSFV_OK;
        case bsfv::Status::InvalidArgument: return BSFV_INVALID_ARGUMENT;
        case bsfv::Status::SingularOperator: return BSFV_SINGULAR_OPERATOR;
        case bsfv::Status::SolveFailure: return BSFV_SOLVE_FAILURE;
        case bsfv::Status::IoFailure: return BSFV_IO_FAILURE;
        case bsfv::Status::Internal: return BSFV_INTERNAL_ERROR;
    }
    return BSFV_INTERNAL_ERROR;
}

template <typename Fn>
bsfv_status wrap(Fn&& fn) noexcept {
    try {
        fn();
        return BSFV_OK;
    } catch (const bsfv::Error& e) {
        set_error(e.what());
        return map_status(e.status());
    } catch (const std::exception& e) {
        set_error(e.what());
        return BSFV_INTERNAL_ERROR;
    } catch (...) {
        set_error("unknown failure");
        return BSFV_INTERNAL_ERROR;
    }
}

void check(bool condition, const char* message) {
    bsfv::require(condition, message);
}

bsfv::ModelParams to_core(const bsfv_model_params& p) {
    return bsfv::ModelParams{p.sigma1, p.sigma2, p.rho, p.r, p.strike, p.maturity};
}

std::ofstream open_output(const char* path) {
    check(path != nullptr, "output path is null");
    std::ofstream out(path);
    bsfv::require(out.is_open(), std::string("cannot open output file: ") + path,
                  bsfv::Status::IoFailure);
    return out;
}

} // namespace

extern "C" {

const char* bsfv_last_error(void) { return g_last_error.c_str(); }

bsfv_status bsfv_grid_create_uniform(int n_interior, double x_max, double y_max,
                                     bsfv_grid** out) {
    return wrap([&] {
        check(out != nullptr, "output handle is null");
        *out = new bsfv_grid{bsfv::make_grid(bsfv::build_uniform(n_interior, x_max),
                                             bsfv::build_uniform(n_interior, y_max))};
    });
}

bsfv_status bsfv_grid_create_graded(int n_interior, double x_max, double y_max, double focus,
                                    double strength, bsfv_grid** out) {
    return wrap([&] {
        check(out != nullptr, "output handle is null");
        *out = new bsfv_grid{
            bsfv::make_grid(bsfv::build_graded(n_interior, x_max, focus, strength),
                            bsfv::build_graded(n_interior, y_max, focus, strength))};
    });
}

void bsfv_grid_release(bsfv_grid* grid) { delete grid; }

bsfv_status bsfv_grid_write_axis(const bsfv_grid* grid, int axis, const char* path) {
    return wrap([&] {
        check(grid != nullptr, "grid handle is null");
        check(axis == 0 || axis == 1, "axis must be 0 (x) or 1 (y)");
        std::ofstream out = open_output(path);
        bsfv::write_axis(axis == 0 ? grid->grid.x : grid->grid.y, out);
    });
}

bsfv_status bsfv_payoff(double x, double y, double strike, double* out) {
    return wrap([&] {
        check(out != nullptr, "output pointer is null");
        *out = bsfv::payoff(x, y, strike);
    });
}

bsfv_status bsfv_bvn_cdf(double a, double b, double rho, double* out) {
    return wrap([&] {
        check(out != nullptr, "output pointer is null");
        *out = bsfv::bvn_cdf(a, b, rho);
    });
}

bsfv_status bsfv_price_max_call(const bsfv_model_params* params, double x, double y, double tau,
                                int discounted_legs, double* out) {
    return wrap([&] {
        check(params != nullptr, "params pointer is null");
        check(out != nullptr, "output pointer is null");
        const bsfv::AnalyticVariant variant = discounted_legs != 0
                                                  ? bsfv::AnalyticVariant::DiscountedLegs
                                                  : bsfv::AnalyticVariant::Standard;
        *out = bsfv::rainbow_max_call(to_core(*params), x, y, tau, variant);
    });
}

bsfv_status bsfv_price_monte_carlo(const bsfv_model_params* params, double x, double y,
                                   long long n_paths, uint64_t seed, double* price,
                                   double* std_error) {
    return wrap([&] {
        check(params != nullptr, "params pointer is null");
        check(price != nullptr, "price pointer is null");
        const bsfv::McResult result = bsfv::mc_price(to_core(*params), x, y, n_paths, seed);
        *price = result.price;
        if (std_error != nullptr) *std_error = result.std_error;
    });
}

bsfv_solve_options bsfv_default_solve_options(void) {
    bsfv_solve_options options;
    options.scheme = nullptr;
    options.theta = 0.5;
    options.dtau = 0.01;
    options.upwind1_squared = 0;
    options.velocity_at_midpoint = 0;
    options.discounted_legs = 0;
    options.zero_axis_boundary = 0;
    return options;
}

bsfv_status bsfv_solve(const bsfv_grid* grid, const bsfv_model_params* params,
                       const bsfv_solve_options* options, bsfv_solution** out) {
    return wrap([&] {
        check(grid != nullptr, "grid handle is null");
        check(params != nullptr, "params pointer is null");
        check(out != nullptr, "output handle is null");
        const bsfv_solve_options opts =
            options != nullptr ? *options : bsfv_default_solve_options();

        const bsfv::ModelParams model = to_core(*params);
        const bsfv::SchemeKind scheme =
            bsfv::parse_scheme(opts.scheme != nullptr ? opts.scheme : "mpfa-up1");
        bsfv::ConvectionOptions convection;
        convection.kind = opts.upwind1_squared != 0 ? bsfv::Upwind1Kind::Squared
                                                    : bsfv::Upwind1Kind::Donor;
        convection.velocity_eval = opts.velocity_at_midpoint != 0
                                       ? bsfv::VelocityEval::Midpoint
                                       : bsfv::VelocityEval::Node;
        const bsfv::AnalyticVariant variant = opts.discounted_legs != 0
                                                  ? bsfv::AnalyticVariant::DiscountedLegs
                                                  : bsfv::AnalyticVariant::Standard;

        const bsfv::TensorGrid& g = grid->grid;
        const bsfv::AssemblyParts parts =
            bsfv::assemble_scheme(g, model, scheme, convection);
        const bsfv::SystemOperator system = bsfv::build_system(g, model, parts);
        const bsfv::ThetaScheme theta_scheme =
            bsfv::make_theta_scheme(opts.theta, model.maturity, opts.dtau);
        const bsfv::BoundaryProvider boundary =
            bsfv::make_analytic_boundary(model, variant, opts.zero_axis_boundary != 0);

        bsfv::GridFunction numeric =
            bsfv::run_solver(g, model, system, theta_scheme, boundary);

        const int n = g.n();
        bsfv::GridFunction analytic(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= n; ++j) {
                analytic[static_cast<std::size_t>(bsfv::flat_index(i, j, n))] =
                    bsfv::rainbow_max_call(model, g.x.x(i), g.y.x(j), model.maturity, variant);
            }
        }
        bsfv::ErrorReport report = bsfv::rel_l2_error(numeric, analytic, g);
        report.scheme = bsfv::scheme_name(scheme);

        *out = new bsfv_solution{g, std::move(numeric), std::move(analytic), std::move(report)};
    });
}

void bsfv_solution_release(bsfv_solution* solution) { delete solution; }

bsfv_status bsfv_solution_value(const bsfv_solution* solution, int i, int j, double* out) {
    return wrap([&] {
        check(solution != nullptr, "solution handle is null");
        check(out != nullptr, "output pointer is null");
        const int n = solution->grid.n();
        check(i >= 1 && i <= n && j >= 1 && j <= n, "node index out of range");
        *out = solution->numeric[static_cast<std::size_t>(bsfv::flat_index(i, j, n))];
    });
}

bsfv_status bsfv_solution_stats(const bsfv_solution* solution, double* rel_l2, double* max_abs) {
    return wrap([&] {
        check(solution != nullptr, "solution handle is null");
        if (rel_l2 != nullptr) *rel_l2 = solution->report.rel_l2;
        if (max_abs != nullptr) *max_abs = solution->report.max_abs;
    });
}

bsfv_status bsfv_solution_write_surface(const bsfv_solution* solution, const char* path) {
    return wrap([&] {
        check(solution != nullptr, "solution handle is null");
        std::ofstream out = open_output(path);
        const int n = solution->grid.n();
        char line[160];
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= n; ++j) {
                const std::size_t idx = static_cast<std::size_t>(bsfv::flat_index(i, j, n));
                std::snprintf(line, sizeof line, "%.12g %.12g %.12g %.12g\n",
                              solution->grid.x.x(i), solution->grid.y.x(j),
                              solution->numeric[idx], solution->analytic[idx]);
                out << line;
            }
        }
        bsfv::require(out.good(), "surface write failed", bsfv::Status::IoFailure);
    });
}

bsfv_status bsfv_run_experiment(const char* config_text, const char* csv_path) {
    return wrap([&] {
        check(config_text != nullptr, "config text is null");
        const bsfv::ExperimentConfig config = bsfv::parse_config_text(config_text);
        std::ofstream out = open_output(csv_path);
        bsfv::run_experiment_csv(config, out);
    });
}

bsfv_status bsfv_dump_surface(const char* config_text, int n, const char* path) {
    return wrap([&] {
        check(config_text != nullptr, "config text is null");
        const bsfv::ExperimentConfig config = bsfv::parse_config_text(config_text);
        std::ofstream out = open_output(path);
        bsfv::dump_surface(config, n, out);
    });
}

bsfv_status bsfv_dump_sparsity(const char* config_text, int n, const char* path) {
    return wrap([&] {
        check(config_text != nullptr, "config text is null");
        const bsfv::ExperimentConfig config = bsfv::parse_config_text(config_text);
        std::ofstream out = open_output(path);
        bsfv::dump_sparsity(config, n, out);
    });
}

} // extern "C"
