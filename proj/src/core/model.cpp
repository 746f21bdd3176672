#include "core/model.hpp"

#include <algorithm>
#include <cmath>

namespace bsfv {

void ModelParams::validate() const {
    require(std::isfinite(sigma1) && sigma1 > 0.0, "sigma1 must be positive");
    require(std::isfinite(sigma2) && sigma2 > 0.0, "sigma2 must be positive");
    require(std::isfinite(rho) && std::fabs(rho) < 1.0, "|rho| must be < 1");
    require(std::isfinite(r), "r must be finite");
    require(std::isfinite(strike) && strike > 0.0, "strike must be positive");
    require(std::isfinite(maturity) && maturity > 0.0, "maturity must be positive");
}

PdeCoefficients derive_coefficients(const ModelParams& p) {
    const double s1 = p.sigma1 * p.sigma1;
    const double s2 = p.sigma2 * p.sigma2;
    const double cross = p.rho * p.sigma1 * p.sigma2;
    PdeCoefficients c;
    c.lambda = -3.0 * p.r + s1 + s2 + cross;
    c.p_coef = p.r - s1 - 0.5 * cross;
    c.q_coef = p.r - s2 - 0.5 * cross;
    c.omega = c.p_coef + c.q_coef;
    return c;
}

Vec2 velocity(const ModelParams& params, double x, double y) {
    const PdeCoefficients c = derive_coefficients(params);
    return Vec2{c.p_coef * x, c.q_coef * y};
}

namespace {

// Average of M over the rectangle [xl,xr] x [yl,yr]:
//   m11 = (1/meas) Int (sigma1^2/2) x^2,  m12 = (1/meas) Int (rho s1 s2 / 2) x y.
SymTensor2 averaged_tensor_rect(const ModelParams& p, double xl, double xr,
                                double yl, double yr) {
    SymTensor2 t;
    t.m11 = p.sigma1 * p.sigma1 / 6.0 * (xr * xr * xr - xl * xl * xl) / (xr - xl);
    t.m22 = p.sigma2 * p.sigma2 / 6.0 * (yr * yr * yr - yl * yl * yl) / (yr - yl);
    t.m12 = p.rho * p.sigma1 * p.sigma2 / 8.0 * (xr + xl) * (yr + yl);
    return t;
}

} // namespace

SymTensor2 averaged_tensor(const ModelParams& params, const TensorGrid& grid, int i, int j) {
    require(i >= 1 && i <= grid.x.n_interior() && j >= 1 && j <= grid.y.n_interior(),
            "averaged_tensor: interior index out of range");
    return averaged_tensor_rect(params, grid.x.xm(i), grid.x.xm(i + 1),
                                grid.y.xm(j), grid.y.xm(j + 1));
}

SymTensor2 averaged_tensor_extended(const ModelParams& params, const TensorGrid& grid,
                                    int i, int j) {
    require(i >= 0 && i <= grid.x.n_interior() + 1 && j >= 0 && j <= grid.y.n_interior() + 1,
            "averaged_tensor_extended: index out of range");
    return averaged_tensor_rect(params, grid.x.xm(i), grid.x.xm(i + 1),
                                grid.y.xm(j), grid.y.xm(j + 1));
}

double payoff(double x, double y, double strike) {
    return std::max(std::max(x, y) - strike, 0.0);
}

} // namespace bsfv
