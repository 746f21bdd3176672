#pragma once

// Self-contained reference implementations used by the test suite to verify
// the library through independent routes: dense linear algebra written from
// scratch, adaptive quadrature, closed forms evaluated without any shared
// code with the library under test. Nothing here may include library
// headers; values produced here are the arbiters in dual-route checks.

#include <functional>
#include <span>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------------------
// Dense linear algebra (row-major, no external dependencies).
// ---------------------------------------------------------------------------

class DenseMatrix {
public:
    DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0.0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    double at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

private:
    int rows_;
    int cols_;
    std::vector<double> data_;
};

DenseMatrix identity(int n);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> matvec(const DenseMatrix& m, std::span<const double> x);
double inf_norm(const DenseMatrix& m);

/// Gaussian elimination with partial pivoting; throws std::runtime_error on
/// a pivot smaller than 1e-300.
std::vector<double> lu_solve(DenseMatrix a, std::vector<double> rhs);

/// exp(A) by scaling-and-squaring with a truncated Taylor series.
DenseMatrix matrix_exponential(const DenseMatrix& a);

/// Exact solution at time t of u' = A u + f with constant forcing f,
/// evaluated through the exponential of the augmented matrix [[A, f], [0, 0]].
std::vector<double> exact_linear_evolution(const DenseMatrix& a, std::span<const double> u0,
                                           std::span<const double> f, double t);

// ---------------------------------------------------------------------------
// Quadrature.
// ---------------------------------------------------------------------------

/// Recursive adaptive Simpson integration with Richardson control.
double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi, double tol);

/// Standard normal CDF straight off erfc.
double normal_cdf(double x);

/// P(X <= a, Y <= b), X,Y standard normal with correlation rho (|rho| < 1).
/// Computed by adaptive quadrature of the bivariate density, iterated over
/// the two variables; the inner slice mass is the exact conditional normal
/// mass. Absolute accuracy around 1e-13.
double bvn_mass(double a, double b, double rho);

/// Average of f over [lo, hi] by composite Simpson (exact through cubics).
double average_1d(const std::function<double(double)>& f, double lo, double hi);

// ---------------------------------------------------------------------------
// Closed forms.
// ---------------------------------------------------------------------------

/// Univariate Black-Scholes call written independently of the library.
double bs_call(double spot, double strike, double r, double sigma, double tau);

// ---------------------------------------------------------------------------
// Degeneracy-region edge flux, re-derived by the quadrature route.
// ---------------------------------------------------------------------------

struct EdgeFlux {
    double owner = 0.0;
    double neighbor = 0.0;
    double axis = 0.0;
};

/// Flux through a first-row cell edge rebuilt step by step: the transverse
/// profile is the exact linear solution of the constant-flux two-point
/// problem on (0, first_spacing); the along-edge derivative is a forward
/// difference over edge_len; the edge integral is the midpoint rule. No
/// algebraic simplification is performed, so this is an independent route to
/// the closed coefficient formulas.
///   flux(U_owner, U_next, U_axis) =
///     edge_len * m * (diff_coef * m * slope + cross_coef * fd + react_coef * mid)
///   with m = first_spacing / 2, slope = (U_owner - U_axis)/first_spacing,
///   mid = (U_owner + U_axis)/2, fd = (U_next - U_owner)/edge_len.
EdgeFlux fitted_edge_by_quadrature(double diff_coef, double react_coef, double cross_coef,
                                   double edge_len, double first_spacing);

} // namespace oracle
