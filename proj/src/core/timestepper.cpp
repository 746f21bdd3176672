#include "core/timestepper.hpp"

#include <algorithm>
#include <cmath>

namespace bsfv {

void ThetaScheme::validate() const {
    require(theta >= 0.0 && theta <= 1.0, "theta must lie in [0, 1]");
    require(dtau > 0.0 && std::isfinite(dtau), "dtau must be positive");
    require(n_steps >= 1, "need at least one time step");
}

ThetaScheme make_theta_scheme(double theta, double total_time, double dtau_request) {
    require(total_time > 0.0 && std::isfinite(total_time), "total time must be positive");
    require(dtau_request > 0.0 && std::isfinite(dtau_request), "requested dtau must be positive");
    ThetaScheme scheme;
    scheme.theta = theta;
    // Round the count up, with slack so that an exact divisor stays exact.
    scheme.n_steps = std::max(1, static_cast<int>(std::ceil(total_time / dtau_request - 1e-9)));
    scheme.dtau = total_time / scheme.n_steps;
    scheme.validate();
    return scheme;
}

BoundaryProvider make_analytic_boundary(const ModelParams& params, AnalyticVariant variant,
                                        bool zero_axes) {
    params.validate();
    return [params, variant, zero_axes](double x, double y, double tau) -> double {
        if (zero_axes && (x <= 0.0 || y <= 0.0)) return 0.0;
        if (tau <= 0.0) return payoff(x, y, params.strike);
        return rainbow_max_call(params, x, y, tau, variant);
    };
}

SystemOperator build_system(const TensorGrid& grid, const ModelParams& params,
                            const AssemblyParts& spatial_flux) {
    params.validate();
    const PdeCoefficients coeffs = derive_coefficients(params);
    const int n = grid.n();
    const int unknowns = n * n;

    auto scaled = [&](const std::vector<Triplet>& triplets) {
        std::vector<Triplet> out;
        out.reserve(triplets.size() + static_cast<std::size_t>(unknowns));
        for (const Triplet& t : triplets) {
            const int i = t.row / n + 1;
            const int j = t.row % n + 1;
            out.push_back(Triplet{t.row, t.col, t.value / cell_measure(grid, i, j)});
        }
        return out;
    };

    std::vector<Triplet> a_triplets = scaled(spatial_flux.interior);
    for (int row = 0; row < unknowns; ++row) {
        a_triplets.push_back(Triplet{row, row, coeffs.lambda});
    }
    std::vector<Triplet> b_triplets = scaled(spatial_flux.boundary);

    SystemOperator system;
    system.a = SparseOperator::from_triplets(unknowns, unknowns, a_triplets);
    system.boundary_coupling =
        SparseOperator::from_triplets(unknowns, boundary_count(n), b_triplets);
    return system;
}

GridFunction payoff_grid(const TensorGrid& grid, const ModelParams& params) {
    params.validate();
    const int n = grid.n();
    GridFunction u(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            u[static_cast<std::size_t>(flat_index(i, j, n))] =
                payoff(grid.x.x(i), grid.y.x(j), params.strike);
        }
    }
    return u;
}

namespace {

SparseOperator shifted_identity(const SparseOperator& a, double factor) {
    std::vector<Triplet> triplets = a.entries();
    for (Triplet& t : triplets) t.value *= factor;
    for (int row = 0; row < a.rows(); ++row) triplets.push_back(Triplet{row, row, 1.0});
    return SparseOperator::from_triplets(a.rows(), a.cols(), triplets);
}

} // namespace

ThetaStepper::ThetaStepper(const ThetaScheme& scheme, const SparseOperator& a)
    : scheme_(scheme),
      explicit_part_(shifted_identity(a, (1.0 - scheme.theta) * scheme.dtau)),
      implicit_lu_(shifted_identity(a, -scheme.theta * scheme.dtau)) {
    scheme.validate();
    require(a.rows() == a.cols(), "theta stepper needs a square operator");
}

GridFunction ThetaStepper::advance(const GridFunction& u,
                                   const std::vector<double>& forcing_now,
                                   const std::vector<double>& forcing_next) const {
    const std::size_t size = u.size();
    require(forcing_now.size() == size && forcing_next.size() == size,
            "theta stepper: forcing size mismatch");
    std::vector<double> rhs = explicit_part_.apply(u);
    const double wn = (1.0 - scheme_.theta) * scheme_.dtau;
    const double wn1 = scheme_.theta * scheme_.dtau;
    for (std::size_t k = 0; k < size; ++k) {
        rhs[k] += wn1 * forcing_next[k] + wn * forcing_now[k];
    }
    return implicit_lu_.solve(rhs);
}

GridFunction step(const ThetaScheme& scheme, const SparseOperator& a, const GridFunction& u,
                  const std::vector<double>& forcing_now,
                  const std::vector<double>& forcing_next) {
    return ThetaStepper(scheme, a).advance(u, forcing_now, forcing_next);
}

GridFunction run_solver(const TensorGrid& grid, const ModelParams& params,
                        const SystemOperator& system, const ThetaScheme& scheme,
                        const BoundaryProvider& boundary, RunDiagnostics* diagnostics) {
    scheme.validate();
    const int n = grid.n();
    const int unknowns = n * n;
    require(system.a.rows() == unknowns && system.a.cols() == unknowns,
            "run_solver: operator size does not match the grid");
    require(system.boundary_coupling.rows() == unknowns &&
                system.boundary_coupling.cols() == boundary_count(n),
            "run_solver: boundary coupling size does not match the grid");

    GridFunction u = payoff_grid(grid, params);
    ThetaStepper stepper(scheme, system.a);

    auto frame_at = [&](double tau) {
        return frame_values(grid, [&](double x, double y) { return boundary(x, y, tau); });
    };

    // Envelope for the range monitor: payoff extremes plus all boundary data
    // seen so far, with a small tolerance in strike units.
    const double tol = 1e-6 * params.strike;
    double env_lo = *std::min_element(u.begin(), u.end());
    double env_hi = *std::max_element(u.begin(), u.end());
    RunDiagnostics diag;
    diag.n_steps = scheme.n_steps;

    std::vector<double> g = frame_at(0.0);
    auto absorb = [&](const std::vector<double>& values) {
        for (const double v : values) {
            env_lo = std::min(env_lo, v);
            env_hi = std::max(env_hi, v);
        }
    };
    absorb(g);
    std::vector<double> f_now = system.boundary_coupling.apply(g);

    for (int s = 0; s < scheme.n_steps; ++s) {
        const double tau_next = scheme.dtau * (s + 1);
        g = frame_at(tau_next);
        absorb(g);
        std::vector<double> f_next = system.boundary_coupling.apply(g);
        try {
            u = stepper.advance(u, f_now, f_next);
        } catch (const Error& e) {
            throw Error(e.status(), std::string(e.what()) + " at time step " + std::to_string(s + 1));
        }
        const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
        const double excursion = std::max(env_lo - *lo, *hi - env_hi);
        if (excursion > tol) {
            ++diag.range_violations;
            diag.worst_excursion = std::max(diag.worst_excursion, excursion);
        }
        f_now = std::move(f_next);
    }

    diag.final_min = *std::min_element(u.begin(), u.end());
    diag.final_max = *std::max_element(u.begin(), u.end());
    if (diagnostics != nullptr) *diagnostics = diag;
    return u;
}

} // namespace bsfv
