#include "core/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "core/fitted.hpp"
#include "core/mpfa.hpp"

namespace bsfv {

std::string scheme_name(SchemeKind scheme) {
    switch (scheme) {
        case SchemeKind::MpfaUp1: return "mpfa-up1";
        case SchemeKind::MpfaUp2: return "mpfa-up2";
        case SchemeKind::FittedUp1: return "fitted-mpfa-up1";
        case SchemeKind::FittedUp2: return "fitted-mpfa-up2";
    }
    throw Error(Status::Internal, "scheme_name: unknown scheme");
}

SchemeKind parse_scheme(const std::string& name) {
    if (name == "mpfa-up1") return SchemeKind::MpfaUp1;
    if (name == "mpfa-up2") return SchemeKind::MpfaUp2;
    if (name == "fitted-mpfa-up1") return SchemeKind::FittedUp1;
    if (name == "fitted-mpfa-up2") return SchemeKind::FittedUp2;
    throw Error(Status::InvalidArgument,
                "unknown scheme '" + name +
                    "' (expected mpfa-up1, mpfa-up2, fitted-mpfa-up1, fitted-mpfa-up2)");
}

void ExperimentConfig::validate() const {
    params.validate();
    require(x_max > 0.0 && y_max > 0.0, "config: domain bounds must be positive");
    require(theta >= 0.0 && theta <= 1.0, "config: theta must lie in [0, 1]");
    require(dtau > 0.0, "config: dtau must be positive");
    require(!n_values.empty(), "config: no grid sizes requested");
    for (const int n : n_values) require(n >= 3, "config: grid sizes must be at least 3");
}

ExperimentConfig preset(const std::string& name) {
    ExperimentConfig c;
    if (name == "table1") {
        c.n_values = {50, 70, 85, 100, 150};
        return c;
    }
    if (name == "table2") {
        c.params.r = 0.08;
        c.n_values = {50, 100, 150};
        return c;
    }
    if (name == "table3") {
        c.params.r = 0.0;
        c.n_values = {100, 150};
        return c;
    }
    if (name == "table4" || name == "table5") {
        c.x_max = 4.0;
        c.y_max = 4.0;
        c.params = ModelParams{1.0, 1.0, 0.3, 0.5, 1.0, 2.0};
        c.dtau = name == "table5" ? 0.1 : 0.01;
        c.n_values = {50, 100};
        c.grade_focus = c.params.strike;
        return c;
    }
    if (name == "fig1" || name == "fig2" || name == "fig3") {
        c.params = ModelParams{0.3, 0.3, 0.5, 0.03, 100.0, 1.0 / 12.0};
        c.n_values = {100};
        c.scheme = name == "fig3" ? SchemeKind::FittedUp1 : SchemeKind::MpfaUp1;
        return c;
    }
    throw Error(Status::InvalidArgument,
                "unknown preset '" + name + "' (expected table1..table5 or fig1..fig3)");
}

std::vector<std::string> preset_names() {
    return {"table1", "table2", "table3", "table4", "table5", "fig1", "fig2", "fig3"};
}

namespace {

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        require(used == value.size() && std::isfinite(parsed), "trailing characters");
        return parsed;
    } catch (const std::exception&) {
        throw Error(Status::InvalidArgument, "config: bad numeric value for '" + key + "': " + value);
    }
}

bool parse_flag(const std::string& key, const std::string& value) {
    if (value == "1" || value == "true" || value == "on") return true;
    if (value == "0" || value == "false" || value == "off") return false;
    throw Error(Status::InvalidArgument, "config: bad boolean for '" + key + "': " + value);
}

std::vector<int> parse_n_list(const std::string& value) {
    std::vector<int> out;
    std::stringstream stream(value);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        out.push_back(static_cast<int>(parse_number("n", item)));
    }
    require(!out.empty(), "config: empty grid-size list");
    return out;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

} // namespace

void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value) {
    if (key == "preset") {
        config = preset(value);
    } else if (key == "scheme") {
        config.scheme = parse_scheme(value);
    } else if (key == "n") {
        config.n_values = parse_n_list(value);
    } else if (key == "x_max") {
        config.x_max = parse_number(key, value);
    } else if (key == "y_max") {
        config.y_max = parse_number(key, value);
    } else if (key == "sigma1") {
        config.params.sigma1 = parse_number(key, value);
    } else if (key == "sigma2") {
        config.params.sigma2 = parse_number(key, value);
    } else if (key == "rho") {
        config.params.rho = parse_number(key, value);
    } else if (key == "r") {
        config.params.r = parse_number(key, value);
    } else if (key == "strike") {
        config.params.strike = parse_number(key, value);
    } else if (key == "maturity") {
        config.params.maturity = parse_number(key, value);
    } else if (key == "theta") {
        config.theta = parse_number(key, value);
    } else if (key == "dtau") {
        config.dtau = parse_number(key, value);
    } else if (key == "grid") {
        if (value == "uniform") config.grid_kind = GridKind::Uniform;
        else if (value == "graded") config.grid_kind = GridKind::Graded;
        else throw Error(Status::InvalidArgument, "config: bad grid kind: " + value);
    } else if (key == "grade_focus") {
        config.grade_focus = parse_number(key, value);
    } else if (key == "grade_strength") {
        config.grade_strength = parse_number(key, value);
    } else if (key == "upwind1") {
        if (value == "donor") config.convection.kind = Upwind1Kind::Donor;
        else if (value == "squared") config.convection.kind = Upwind1Kind::Squared;
        else throw Error(Status::InvalidArgument, "config: bad upwind1 variant: " + value);
    } else if (key == "velocity_eval") {
        if (value == "node") config.convection.velocity_eval = VelocityEval::Node;
        else if (value == "midpoint") config.convection.velocity_eval = VelocityEval::Midpoint;
        else throw Error(Status::InvalidArgument, "config: bad velocity_eval: " + value);
    } else if (key == "variant") {
        if (value == "standard") config.variant = AnalyticVariant::Standard;
        else if (value == "discounted") config.variant = AnalyticVariant::DiscountedLegs;
        else throw Error(Status::InvalidArgument, "config: bad analytic variant: " + value);
    } else if (key == "zero_axis_boundary") {
        config.zero_axis_boundary = parse_flag(key, value);
    } else if (key == "seed") {
        config.seed = static_cast<std::uint64_t>(parse_number(key, value));
    } else {
        throw Error(Status::InvalidArgument, "config: unknown key '" + key + "'");
    }
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig config;
    std::stringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        require(eq != std::string::npos,
                "config: line " + std::to_string(line_no) + " is not key=value: " + line);
        apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return config;
}

TensorGrid build_experiment_grid(const ExperimentConfig& config, int n) {
    if (config.grid_kind == GridKind::Uniform) {
        return make_grid(build_uniform(n, config.x_max), build_uniform(n, config.y_max));
    }
    return make_grid(build_graded(n, config.x_max, config.grade_focus, config.grade_strength),
                     build_graded(n, config.y_max, config.grade_focus, config.grade_strength));
}

AssemblyParts assemble_scheme(const TensorGrid& grid, const ModelParams& params,
                              SchemeKind scheme, const ConvectionOptions& convection) {
    switch (scheme) {
        case SchemeKind::MpfaUp1: {
            AssemblyParts parts = assemble_diffusion(grid, params);
            parts.append(assemble_upwind1(grid, params, convection));
            return parts;
        }
        case SchemeKind::MpfaUp2: {
            AssemblyParts parts = assemble_diffusion(grid, params);
            parts.append(assemble_upwind2(grid, params, convection));
            return parts;
        }
        case SchemeKind::FittedUp1:
            return assemble_fitted(grid, params, UpwindOrder::First, convection);
        case SchemeKind::FittedUp2:
            return assemble_fitted(grid, params, UpwindOrder::Second, convection);
    }
    throw Error(Status::Internal, "assemble_scheme: unknown scheme");
}

SingleRunResult run_single(const ExperimentConfig& config, int n) {
    config.validate();
    TensorGrid grid = build_experiment_grid(config, n);
    const AssemblyParts parts =
        assemble_scheme(grid, config.params, config.scheme, config.convection);
    const SystemOperator system = build_system(grid, config.params, parts);
    const ThetaScheme scheme =
        make_theta_scheme(config.theta, config.params.maturity, config.dtau);
    const BoundaryProvider boundary =
        make_analytic_boundary(config.params, config.variant, config.zero_axis_boundary);

    const auto start = std::chrono::steady_clock::now();
    GridFunction numeric = run_solver(grid, config.params, system, scheme, boundary);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    GridFunction analytic(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            analytic[static_cast<std::size_t>(flat_index(i, j, n))] = rainbow_max_call(
                config.params, grid.x.x(i), grid.y.x(j), config.params.maturity, config.variant);
        }
    }

    SingleRunResult result{rel_l2_error(numeric, analytic, grid), std::move(numeric),
                           std::move(analytic), std::move(grid)};
    result.report.scheme = scheme_name(config.scheme);
    result.report.seconds = elapsed.count();
    return result;
}

void run_experiment_csv(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    out << "scheme,N,theta,dtau,rel_l2,max_abs,seconds\n";
    const double dtau_actual =
        make_theta_scheme(config.theta, config.params.maturity, config.dtau).dtau;
    for (const int n : config.n_values) {
        const SingleRunResult result = run_single(config, n);
        char line[256];
        std::snprintf(line, sizeof line, "%s,%d,%.12g,%.12g,%.12g,%.12g,%.3f\n",
                      result.report.scheme.c_str(), n, config.theta, dtau_actual,
                      result.report.rel_l2, result.report.max_abs, result.report.seconds);
        out << line;
    }
    require(out.good(), "run_experiment_csv: stream failure", Status::IoFailure);
}

void dump_surface(const ExperimentConfig& config, int n, std::ostream& out) {
    const SingleRunResult result = run_single(config, n);
    const TensorGrid& grid = result.grid;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            const std::size_t idx = static_cast<std::size_t>(flat_index(i, j, n));
            char line[160];
            std::snprintf(line, sizeof line, "%.12g %.12g %.12g %.12g\n", grid.x.x(i),
                          grid.y.x(j), result.numeric[idx], result.analytic[idx]);
            out << line;
        }
    }
    require(out.good(), "dump_surface: stream failure", Status::IoFailure);
}

void dump_sparsity(const ExperimentConfig& config, int n, std::ostream& out) {
    config.validate();
    const TensorGrid grid = build_experiment_grid(config, n);
    const AssemblyParts parts =
        assemble_scheme(grid, config.params, config.scheme, config.convection);
    const SystemOperator system = build_system(grid, config.params, parts);
    write_pattern(system.a, out);
}

} // namespace bsfv
