#include "core/fitted.hpp"

#include "core/mpfa.hpp"

namespace bsfv {

FittedFluxCoeffs fitted_south_flux(const TensorGrid& grid, const ModelParams& params, int i) {
    const int n = grid.n();
    require(i >= 1 && i <= n, "fitted_south_flux: cell index out of range");
    const double e = 0.5 * params.sigma2 * params.sigma2;
    const double k = derive_coefficients(params).q_coef;
    const double hp = 0.5 * params.rho * params.sigma1 * params.sigma2 * grid.x.x(i);
    const double y1 = grid.y.x(1);
    const double hi = grid.x.h(i);
    FittedFluxCoeffs f;
    f.owner = 0.5 * y1 * (0.5 * hi * (e + k) - hp);
    f.neighbor = 0.5 * hp * y1;
    f.axis = -0.25 * y1 * hi * (e - k);
    return f;
}

FittedFluxCoeffs fitted_west_flux(const TensorGrid& grid, const ModelParams& params, int j) {
    const int n = grid.n();
    require(j >= 1 && j <= n, "fitted_west_flux: cell index out of range");
    const double a = 0.5 * params.sigma1 * params.sigma1;
    const double b = derive_coefficients(params).p_coef;
    const double dj = 0.5 * params.rho * params.sigma1 * params.sigma2 * grid.y.x(j);
    const double x1 = grid.x.x(1);
    const double lj = grid.y.h(j);
    FittedFluxCoeffs f;
    f.owner = 0.5 * x1 * (0.5 * lj * (a + b) - dj);
    f.neighbor = 0.5 * dj * x1;
    f.axis = -0.25 * x1 * lj * (a - b);
    return f;
}

AssemblyParts assemble_fitted(const TensorGrid& grid, const ModelParams& params,
                              UpwindOrder order, const ConvectionOptions& opts) {
    params.validate();
    const int n = grid.n();
    if (order == UpwindOrder::Second) {
        require(n >= 4, "second-order upwinding needs at least 4 interior nodes per axis");
    }
    const PdeCoefficients coeffs = derive_coefficients(params);

    // Degeneracy-region faces whose flux the fitted form supplies; both the
    // diffusion and the upwind assembly must leave them out.
    const FaceFilter skip_fitted_faces = [](int i, int j, Face face) {
        if (j == 1 && face == Face::South) return false;
        if (i == 1 && face == Face::West) return false;
        return true;
    };

    AssemblyParts parts = assemble_diffusion(grid, params, skip_fitted_faces);

    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (i >= 2 && j >= 2) {
                if (order == UpwindOrder::First) {
                    upwind1_row(grid, coeffs, opts, i, j, all_faces, parts);
                } else {
                    upwind2_row(grid, coeffs, opts, i, j, parts);
                }
                continue;
            }
            // Degeneracy-region row: first-order upwinding on the remaining
            // faces, fitted fluxes on the south/west edges. The fitted flux
            // enters the balance with the inflow sign (row -= flux).
            upwind1_row(grid, coeffs, opts, i, j, skip_fitted_faces, parts);
            const int row = flat_index(i, j, n);
            if (j == 1) {
                const FittedFluxCoeffs f = fitted_south_flux(grid, params, i);
                emit(parts, row, i, 1, n, -f.owner);
                emit(parts, row, i + 1, 1, n, -f.neighbor);
                emit(parts, row, i, 0, n, -f.axis);
            }
            if (i == 1) {
                const FittedFluxCoeffs f = fitted_west_flux(grid, params, j);
                emit(parts, row, 1, j, n, -f.owner);
                emit(parts, row, 1, j + 1, n, -f.neighbor);
                emit(parts, row, 0, j, n, -f.axis);
            }
        }
    }
    return parts;
}

} // namespace bsfv
