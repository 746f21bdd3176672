#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracle {

DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw std::runtime_error("matmul: shape mismatch");
    DenseMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a.at(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
        }
    }
    return c;
}

std::vector<double> matvec(const DenseMatrix& m, std::span<const double> x) {
    if (static_cast<int>(x.size()) != m.cols()) throw std::runtime_error("matvec: shape mismatch");
    std::vector<double> y(static_cast<size_t>(m.rows()), 0.0);
    for (int i = 0; i < m.rows(); ++i) {
        double acc = 0.0;
        for (int j = 0; j < m.cols(); ++j) acc += m.at(i, j) * x[static_cast<size_t>(j)];
        y[static_cast<size_t>(i)] = acc;
    }
    return y;
}

double inf_norm(const DenseMatrix& m) {
    double best = 0.0;
    for (int i = 0; i < m.rows(); ++i) {
        double row = 0.0;
        for (int j = 0; j < m.cols(); ++j) row += std::abs(m.at(i, j));
        best = std::max(best, row);
    }
    return best;
}

std::vector<double> lu_solve(DenseMatrix a, std::vector<double> rhs) {
    const int n = a.rows();
    if (a.cols() != n || static_cast<int>(rhs.size()) != n) {
        throw std::runtime_error("lu_solve: shape mismatch");
    }
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(a.at(r, col)) > std::abs(a.at(pivot, col))) pivot = r;
        }
        if (std::abs(a.at(pivot, col)) < 1e-300) throw std::runtime_error("lu_solve: singular");
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(a.at(col, j), a.at(pivot, j));
            std::swap(rhs[static_cast<size_t>(col)], rhs[static_cast<size_t>(pivot)]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double factor = a.at(r, col) / a.at(col, col);
            if (factor == 0.0) continue;
            for (int j = col; j < n; ++j) a.at(r, j) -= factor * a.at(col, j);
            rhs[static_cast<size_t>(r)] -= factor * rhs[static_cast<size_t>(col)];
        }
    }
    std::vector<double> x(static_cast<size_t>(n), 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double acc = rhs[static_cast<size_t>(r)];
        for (int j = r + 1; j < n; ++j) acc -= a.at(r, j) * x[static_cast<size_t>(j)];
        x[static_cast<size_t>(r)] = acc / a.at(r, r);
    }
    return x;
}

DenseMatrix matrix_exponential(const DenseMatrix& a) {
    if (a.rows() != a.cols()) throw std::runtime_error("matrix_exponential: not square");
    const int n = a.rows();

    int scalings = 0;
    double norm = inf_norm(a);
    while (norm > 1.0 / 16.0 && scalings < 60) {
        norm /= 2.0;
        ++scalings;
    }
    const double scale = std::ldexp(1.0, -scalings);

    DenseMatrix scaled(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) scaled.at(i, j) = a.at(i, j) * scale;
    }

    // Taylor series; with ||scaled|| <= 1/16 thirty terms are far below
    // double round-off.
    DenseMatrix result = identity(n);
    DenseMatrix term = identity(n);
    for (int k = 1; k <= 30; ++k) {
        term = matmul(term, scaled);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                term.at(i, j) /= static_cast<double>(k);
                result.at(i, j) += term.at(i, j);
            }
        }
    }
    for (int s = 0; s < scalings; ++s) result = matmul(result, result);
    return result;
}

std::vector<double> exact_linear_evolution(const DenseMatrix& a, std::span<const double> u0,
                                           std::span<const double> f, double t) {
    const int n = a.rows();
    DenseMatrix augmented(n + 1, n + 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) augmented.at(i, j) = a.at(i, j) * t;
        augmented.at(i, n) = f[static_cast<size_t>(i)] * t;
    }
    const DenseMatrix propagator = matrix_exponential(augmented);
    std::vector<double> state(static_cast<size_t>(n) + 1, 0.0);
    for (int i = 0; i < n; ++i) state[static_cast<size_t>(i)] = u0[static_cast<size_t>(i)];
    state[static_cast<size_t>(n)] = 1.0;
    std::vector<double> advanced = matvec(propagator, state);
    advanced.resize(static_cast<size_t>(n));
    return advanced;
}

namespace {

double simpson(double lo, double hi, double f_lo, double f_mid, double f_hi) {
    return (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
}

double adaptive_step(const std::function<double(double)>& f, double lo, double mid, double hi,
                     double f_lo, double f_mid, double f_hi, double whole, double tol,
                     int depth) {
    const double left_mid = 0.5 * (lo + mid);
    const double right_mid = 0.5 * (mid + hi);
    const double f_lm = f(left_mid);
    const double f_rm = f(right_mid);
    const double left = simpson(lo, mid, f_lo, f_lm, f_mid);
    const double right = simpson(mid, hi, f_mid, f_rm, f_hi);
    const double refined = left + right;
    if (depth <= 0 || std::abs(refined - whole) <= 15.0 * tol) {
        return refined + (refined - whole) / 15.0;
    }
    return adaptive_step(f, lo, left_mid, mid, f_lo, f_lm, f_mid, left, tol * 0.5, depth - 1) +
           adaptive_step(f, mid, right_mid, hi, f_mid, f_rm, f_hi, right, tol * 0.5, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (lo == hi) return 0.0;
    const double mid = 0.5 * (lo + hi);
    const double f_lo = f(lo);
    const double f_mid = f(mid);
    const double f_hi = f(hi);
    const double whole = simpson(lo, hi, f_lo, f_mid, f_hi);
    return adaptive_step(f, lo, mid, hi, f_lo, f_mid, f_hi, whole, tol, 48);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double bvn_mass(double a, double b, double rho) {
    if (std::abs(rho) >= 1.0) throw std::runtime_error("bvn_mass: |rho| must be < 1");
    // Mass beyond 8.5 standard deviations is ~1e-17, far below the target
    // accuracy, so the outer integral is truncated there.
    const double cut = 8.5;
    if (a <= -cut || b <= -cut) return 0.0;
    const double upper = std::min(a, cut);
    const double sd = std::sqrt((1.0 - rho) * (1.0 + rho));
    const double inv_sqrt_2pi = 0.3989422804014326779;
    // Iterated integral of the bivariate density: the inner y-slice
    // integrates to the conditional normal mass below b.
    const auto slice = [&](double x) {
        return inv_sqrt_2pi * std::exp(-0.5 * x * x) * normal_cdf((b - rho * x) / sd);
    };
    const double mass = adaptive_simpson(slice, -cut, upper, 5e-15);
    return std::clamp(mass, 0.0, 1.0);
}

double average_1d(const std::function<double(double)>& f, double lo, double hi) {
    if (hi == lo) return f(lo);
    const int panels = 64;
    const double h = (hi - lo) / panels;
    double acc = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double a = lo + k * h;
        const double b = a + h;
        acc += h / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    }
    return acc / (hi - lo);
}

double bs_call(double spot, double strike, double r, double sigma, double tau) {
    if (spot <= 0.0) return 0.0;
    if (tau <= 0.0 || sigma <= 0.0) {
        return std::max(spot - strike * std::exp(-r * tau), 0.0);
    }
    const double total_sd = sigma * std::sqrt(tau);
    const double d1 = (std::log(spot / strike) + (r + 0.5 * sigma * sigma) * tau) / total_sd;
    const double d2 = d1 - total_sd;
    return spot * normal_cdf(d1) - strike * std::exp(-r * tau) * normal_cdf(d2);
}

EdgeFlux fitted_edge_by_quadrature(double diff_coef, double react_coef, double cross_coef,
                                   double edge_len, double first_spacing) {
    const auto flux = [&](double u_owner, double u_next, double u_axis) {
        const double m = 0.5 * first_spacing;               // edge height (midpoint rule)
        const double slope = (u_owner - u_axis) / first_spacing;
        const double mid = 0.5 * (u_owner + u_axis);        // linear profile at the edge
        const double fd = (u_next - u_owner) / edge_len;    // forward difference along it
        return edge_len * m * (diff_coef * m * slope + cross_coef * fd + react_coef * mid);
    };
    EdgeFlux out;
    out.owner = flux(1.0, 0.0, 0.0);
    out.neighbor = flux(0.0, 1.0, 0.0);
    out.axis = flux(0.0, 0.0, 1.0);
    return out;
}

} // namespace oracle
