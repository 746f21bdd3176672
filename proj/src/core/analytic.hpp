#pragma once

#include <cstdint>
#include <vector>

#include "core/model.hpp"

namespace bsfv {

/// Standard normal cumulative distribution function.
double norm_cdf(double x);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

QuadratureRule gauss_legendre(int n);

/// Query for the bivariate normal probability P(X <= a, Y <= b).
struct BvnQuery {
    double a = 0.0;
    double b = 0.0;
    double rho = 0.0;
};

/// P(X <= a, Y <= b) for a standard bivariate normal pair with correlation
/// rho. Absolute accuracy well below 1e-12; infinite bounds saturate and
/// rho = +-1 degenerates to the univariate limits.
double bvn_cdf(double a, double b, double rho);

inline double bvn_cdf(const BvnQuery& q) { return bvn_cdf(q.a, q.b, q.rho); }

/// Univariate Black-Scholes call; zero for a non-positive spot.
double bs_call(double spot, double strike, double r, double sigma, double tau);

/// Which closed form prices the two-asset max call:
/// Standard       - asset legs undiscounted, d built from the cross-asset
///                  volatility (the classical max-call formula);
/// DiscountedLegs - asset legs carry exp(-r tau) and d is built from sigma1
///                  alone.
/// The default is the variant that agrees with the Monte Carlo oracle.
enum class AnalyticVariant { Standard, DiscountedLegs };

inline constexpr AnalyticVariant kDefaultAnalyticVariant = AnalyticVariant::Standard;

/// Intermediate quantities of the closed form.
struct AnalyticInputs {
    double y1 = 0.0;
    double y2 = 0.0;
    double d = 0.0;
    double sigma = 0.0; // cross-asset volatility
    double rho1 = 0.0;
    double rho2 = 0.0;
};

AnalyticInputs derive_analytic_inputs(const ModelParams& params, double x, double y,
                                      double tau, AnalyticVariant variant);

/// Closed-form price of the European call on the maximum of two assets at
/// time-to-expiry tau > 0. Axis values (x = 0 or y = 0) take the
/// single-asset limit; both zero prices to zero.
double rainbow_max_call(const ModelParams& params, double x, double y, double tau,
                        AnalyticVariant variant = kDefaultAnalyticVariant);

struct McResult {
    double price = 0.0;
    double std_error = 0.0;
};

/// Monte Carlo price by exact sampling of the correlated terminal
/// lognormals at horizon params.maturity; no path discretization.
/// Deterministic for a fixed seed.
McResult mc_price(const ModelParams& params, double x, double y,
                  std::int64_t n_paths, std::uint64_t seed);

} // namespace bsfv
