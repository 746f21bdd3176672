#pragma once

#include "core/grid.hpp"
#include "core/types.hpp"

namespace bsfv {

/// Market/model constants for the two-asset problem.
struct ModelParams {
    double sigma1 = 0.0;   // volatility of asset 1, 1/sqrt(year)
    double sigma2 = 0.0;   // volatility of asset 2
    double rho = 0.0;      // correlation, |rho| < 1
    double r = 0.0;        // risk-free rate, 1/year
    double strike = 0.0;   // strike K
    double maturity = 0.0; // T, years

    void validate() const;
};

/// Coefficients of the divergence-form PDE
///   dU/dtau = div(M grad U) + div(f U) + lambda U
/// with velocity f(x,y) = (p_coef*x, q_coef*y) and omega = div f.
struct PdeCoefficients {
    double lambda = 0.0;
    double p_coef = 0.0;
    double q_coef = 0.0;
    double omega = 0.0;
};

PdeCoefficients derive_coefficients(const ModelParams& params);

/// Velocity field f at a point.
Vec2 velocity(const ModelParams& params, double x, double y);

/// Cell average of the diffusion tensor over C_ij, 1 <= i,j <= N.
SymTensor2 averaged_tensor(const ModelParams& params, const TensorGrid& grid, int i, int j);

/// Same average extended to the boundary half-cells, 0 <= i,j <= N+1.
/// Needed by interaction volumes that touch the domain frame.
SymTensor2 averaged_tensor_extended(const ModelParams& params, const TensorGrid& grid,
                                    int i, int j);

/// Terminal payoff of the max-of-two-assets call.
double payoff(double x, double y, double strike);

} // namespace bsfv
