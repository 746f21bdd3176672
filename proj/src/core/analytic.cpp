#include "core/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace bsfv {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

} // namespace

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

QuadratureRule gauss_legendre(int n) {
    require(n >= 1 && n <= 512, "gauss_legendre: order out of range");
    QuadratureRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Newton iteration from the Chebyshev-based initial guess.
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double deriv = 0.0;
        for (int iter = 0; iter < 64; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
            }
            deriv = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / deriv;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        const double w = 2.0 / ((1.0 - z * z) * deriv * deriv);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

namespace {

/// Integral of f over [lo, hi] with a fixed Gauss-Legendre rule.
template <typename F>
double integrate(const QuadratureRule& rule, double lo, double hi, F&& f) {
    const double mid = 0.5 * (lo + hi);
    const double rad = 0.5 * (hi - lo);
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        sum += rule.weights[k] * f(mid + rad * rule.nodes[k]);
    }
    return rad * sum;
}

const QuadratureRule& rule32() {
    static const QuadratureRule rule = gauss_legendre(32);
    return rule;
}

const QuadratureRule& rule16() {
    static const QuadratureRule rule = gauss_legendre(16);
    return rule;
}

/// Moderate-correlation branch: single-integral reduction over the angle,
///   P = Phi(a)Phi(b) + (1/2pi) \int_0^{asin rho} exp(-(a^2 - 2ab sin t
///       + b^2) / (2 cos^2 t)) dt.
double bvn_moderate(double a, double b, double rho) {
    const double s = std::asin(rho);
    double integral = 0.0;
    const int panels = 3;
    for (int p = 0; p < panels; ++p) {
        const double lo = s * p / panels;
        const double hi = s * (p + 1) / panels;
        integral += integrate(rule32(), lo, hi, [&](double t) {
            const double st = std::sin(t);
            const double ct2 = std::cos(t) * std::cos(t);
            return std::exp(-(a * a - 2.0 * a * b * st + b * b) / (2.0 * ct2));
        });
    }
    return norm_cdf(a) * norm_cdf(b) + integral / (2.0 * kPi);
}

/// High-correlation branch (rho >= 0.925): integrate the correlation
/// derivative from rho up to 1, where the probability degenerates to
/// Phi(min(a,b)); substituting w = sqrt(1 - r^2) gives
///   P = Phi(min(a,b)) - (1/2pi) \int_0^{sqrt(1-rho^2)}
///       exp(-(a-b)^2/(2w^2)) exp(-ab/(1+sqrt(1-w^2))) / sqrt(1-w^2) dw.
/// The integrand is resolved on dyadic panels shrinking toward w = 0.
double bvn_high(double a, double b, double rho) {
    const double w_max = std::sqrt((1.0 - rho) * (1.0 + rho));
    const double base = norm_cdf(std::min(a, b));
    if (w_max == 0.0) return base;
    const double gap = std::abs(a - b);
    auto integrand = [&](double w) {
        const double root = std::sqrt(1.0 - w * w);
        const double peak = gap > 0.0 ? std::exp(-gap * gap / (2.0 * w * w)) : 1.0;
        return peak * std::exp(-a * b / (1.0 + root)) / root;
    };
    double total = 0.0;
    double hi = w_max;
    for (int panel = 0; panel < 64; ++panel) {
        if (gap > 0.0 && hi < gap / 28.0) break; // remaining mass below 1e-160
        const double lo = 0.5 * hi;
        total += integrate(rule16(), lo, hi, integrand);
        hi = lo;
    }
    return base - total / (2.0 * kPi);
}

} // namespace

double bvn_cdf(double a, double b, double rho) {
    require(!std::isnan(a) && !std::isnan(b), "bvn_cdf: NaN bound");
    require(std::isfinite(rho) && std::abs(rho) <= 1.0, "bvn_cdf: correlation outside [-1, 1]");
    if (std::isinf(a) && a < 0.0) return 0.0;
    if (std::isinf(b) && b < 0.0) return 0.0;
    if (std::isinf(a)) return std::isinf(b) ? 1.0 : norm_cdf(b);
    if (std::isinf(b)) return norm_cdf(a);
    double value = 0.0;
    if (rho == 1.0) {
        value = norm_cdf(std::min(a, b));
    } else if (rho == -1.0) {
        value = std::max(0.0, norm_cdf(a) + norm_cdf(b) - 1.0);
    } else if (std::abs(rho) < 0.925) {
        value = bvn_moderate(a, b, rho);
    } else if (rho > 0.0) {
        value = bvn_high(a, b, rho);
    } else {
        value = norm_cdf(a) - bvn_high(a, -b, -rho);
    }
    return std::clamp(value, 0.0, 1.0);
}

double bs_call(double spot, double strike, double r, double sigma, double tau) {
    require(std::isfinite(spot), "bs_call: spot must be finite");
    require(strike > 0.0 && std::isfinite(strike), "bs_call: strike must be positive");
    require(sigma > 0.0 && std::isfinite(sigma), "bs_call: volatility must be positive");
    require(tau > 0.0 && std::isfinite(tau), "bs_call: time to expiry must be positive");
    require(std::isfinite(r), "bs_call: rate must be finite");
    if (spot <= 0.0) return 0.0;
    const double vol = sigma * std::sqrt(tau);
    const double d1 = (std::log(spot / strike) + (r + 0.5 * sigma * sigma) * tau) / vol;
    const double d2 = d1 - vol;
    return spot * norm_cdf(d1) - strike * std::exp(-r * tau) * norm_cdf(d2);
}

AnalyticInputs derive_analytic_inputs(const ModelParams& params, double x, double y,
                                      double tau, AnalyticVariant variant) {
    params.validate();
    require(x > 0.0 && y > 0.0 && std::isfinite(x) && std::isfinite(y),
            "derive_analytic_inputs: spots must be positive");
    require(tau > 0.0 && std::isfinite(tau), "derive_analytic_inputs: time to expiry must be positive");
    const double s1 = params.sigma1;
    const double s2 = params.sigma2;
    AnalyticInputs in;
    in.sigma = std::sqrt(s1 * s1 + s2 * s2 - 2.0 * params.rho * s1 * s2);
    require(in.sigma > 0.0, "derive_analytic_inputs: degenerate cross-asset volatility");
    const double dvar = variant == AnalyticVariant::Standard ? in.sigma * in.sigma : s1 * s1;
    in.d = (std::log(x / y) + 0.5 * dvar * tau) / (in.sigma * std::sqrt(tau));
    in.y1 = (std::log(x / params.strike) + (params.r + 0.5 * s1 * s1) * tau) / (s1 * std::sqrt(tau));
    in.y2 = (std::log(y / params.strike) + (params.r + 0.5 * s2 * s2) * tau) / (s2 * std::sqrt(tau));
    in.rho1 = (s1 - params.rho * s2) / in.sigma;
    in.rho2 = (s2 - params.rho * s1) / in.sigma;
    return in;
}

namespace {

/// Price limit when one asset sits at zero: a call on the remaining asset.
double single_asset_limit(const ModelParams& params, double spot, double sigma, double tau,
                          AnalyticVariant variant) {
    if (variant == AnalyticVariant::Standard) {
        return bs_call(spot, params.strike, params.r, sigma, tau);
    }
    if (spot <= 0.0) return 0.0;
    const double vol = sigma * std::sqrt(tau);
    const double d1 =
        (std::log(spot / params.strike) + (params.r + 0.5 * sigma * sigma) * tau) / vol;
    const double disc = std::exp(-params.r * tau);
    return disc * (spot * norm_cdf(d1) - params.strike * norm_cdf(d1 - vol));
}

} // namespace

double rainbow_max_call(const ModelParams& params, double x, double y, double tau,
                        AnalyticVariant variant) {
    params.validate();
    require(std::isfinite(x) && std::isfinite(y) && x >= 0.0 && y >= 0.0,
            "rainbow_max_call: spots must be non-negative");
    require(tau > 0.0 && std::isfinite(tau), "rainbow_max_call: time to expiry must be positive");
    if (x <= 0.0 && y <= 0.0) return 0.0;
    if (y <= 0.0) return single_asset_limit(params, x, params.sigma1, tau, variant);
    if (x <= 0.0) return single_asset_limit(params, y, params.sigma2, tau, variant);

    const AnalyticInputs in = derive_analytic_inputs(params, x, y, tau, variant);
    const double root_tau = std::sqrt(tau);
    const double m1 = bvn_cdf(in.y1, in.d, in.rho1);
    const double m2 = bvn_cdf(in.y2, in.sigma * root_tau - in.d, in.rho2);
    const double m3 = bvn_cdf(params.sigma1 * root_tau - in.y1,
                              params.sigma2 * root_tau - in.y2, params.rho);
    const double disc = std::exp(-params.r * tau);
    const double leg_disc = variant == AnalyticVariant::DiscountedLegs ? disc : 1.0;
    return leg_disc * (x * m1 + y * m2) - params.strike * disc * (1.0 - m3);
}

McResult mc_price(const ModelParams& params, double x, double y,
                  std::int64_t n_paths, std::uint64_t seed) {
    params.validate();
    require(n_paths >= 1000, "mc_price: need at least 1000 paths");
    require(std::isfinite(x) && std::isfinite(y) && x >= 0.0 && y >= 0.0,
            "mc_price: spots must be non-negative");
    const double horizon = params.maturity;
    const double drift1 = (params.r - 0.5 * params.sigma1 * params.sigma1) * horizon;
    const double drift2 = (params.r - 0.5 * params.sigma2 * params.sigma2) * horizon;
    const double vol1 = params.sigma1 * std::sqrt(horizon);
    const double vol2 = params.sigma2 * std::sqrt(horizon);
    const double rho = params.rho;
    const double rho_c = std::sqrt((1.0 - rho) * (1.0 + rho));

    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() {
        // 53-bit mantissa draw in (0, 1]; never zero, so the log is safe.
        return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
    };

    double mean = 0.0;
    double m2 = 0.0;
    for (std::int64_t path = 0; path < n_paths; ++path) {
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * kPi * u2;
        const double z1 = radius * std::cos(angle);
        const double z2 = radius * std::sin(angle);
        const double xt = x * std::exp(drift1 + vol1 * z1);
        const double yt = y * std::exp(drift2 + vol2 * (rho * z1 + rho_c * z2));
        const double value = payoff(xt, yt, params.strike);
        const double delta = value - mean;
        mean += delta / static_cast<double>(path + 1);
        m2 += delta * (value - mean);
    }
    const double disc = std::exp(-params.r * horizon);
    const double variance = n_paths > 1 ? std::max(m2 / static_cast<double>(n_paths - 1), 0.0) : 0.0;
    McResult out;
    out.price = disc * mean;
    out.std_error = disc * std::sqrt(variance / static_cast<double>(n_paths));
    return out;
}

} // namespace bsfv
