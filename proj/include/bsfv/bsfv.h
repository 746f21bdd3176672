/* C interface of the two-asset option finite-volume solver.
 *
 * All functions return a bsfv_status; on failure the thread-local message
 * from bsfv_last_error() describes the problem. Handles are opaque and must
 * be released with their matching release function exactly once.
 */
#ifndef BSFV_H
#define BSFV_H

#include <stdint.h>

#if defined(_WIN32)
#define BSFV_API __declspec(dllexport)
#else
#define BSFV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bsfv_status {
    BSFV_OK = 0,
    BSFV_INVALID_ARGUMENT = 1,
    BSFV_SINGULAR_OPERATOR = 2,
    BSFV_SOLVE_FAILURE = 3,
    BSFV_IO_FAILURE = 4,
    BSFV_INTERNAL_ERROR = 5
} bsfv_status;

/* Message of the most recent failure on the calling thread; never NULL. */
BSFV_API const char* bsfv_last_error(void);

typedef struct bsfv_model_params {
    double sigma1;   /* volatility of asset 1 (> 0) */
    double sigma2;   /* volatility of asset 2 (> 0) */
    double rho;      /* correlation, |rho| < 1 */
    double r;        /* risk-free rate */
    double strike;   /* strike (> 0) */
    double maturity; /* time to expiry in years (> 0) */
} bsfv_model_params;

/* -------- grids -------- */

typedef struct bsfv_grid bsfv_grid;

/* Tensor grid with n_interior nodes per axis on [0,x_max] x [0,y_max]. */
BSFV_API bsfv_status bsfv_grid_create_uniform(int n_interior, double x_max, double y_max,
                                              bsfv_grid** out);

/* Grid refined toward the axis origin and toward `focus` on each axis;
 * strength 0 reproduces the uniform grid. */
BSFV_API bsfv_status bsfv_grid_create_graded(int n_interior, double x_max, double y_max,
                                             double focus, double strength, bsfv_grid** out);

BSFV_API void bsfv_grid_release(bsfv_grid* grid);

/* Write one axis (0 = x, 1 = y) as "index coordinate" text rows. */
BSFV_API bsfv_status bsfv_grid_write_axis(const bsfv_grid* grid, int axis, const char* path);

/* -------- pricing utilities -------- */

/* Terminal payoff max(max(x, y) - strike, 0). */
BSFV_API bsfv_status bsfv_payoff(double x, double y, double strike, double* out);

/* Bivariate standard normal P(X <= a, Y <= b) at correlation rho. */
BSFV_API bsfv_status bsfv_bvn_cdf(double a, double b, double rho, double* out);

/* Closed-form price of the call on the maximum of two assets at
 * time-to-expiry tau. discounted_legs = 0 selects the standard form (the
 * default used everywhere); 1 selects the variant with discounted asset
 * legs. */
BSFV_API bsfv_status bsfv_price_max_call(const bsfv_model_params* params, double x, double y,
                                         double tau, int discounted_legs, double* out);

/* Monte Carlo estimate at horizon params->maturity by exact terminal
 * sampling; deterministic per seed. */
BSFV_API bsfv_status bsfv_price_monte_carlo(const bsfv_model_params* params, double x, double y,
                                            long long n_paths, uint64_t seed, double* price,
                                            double* std_error);

/* -------- PDE solves -------- */

typedef struct bsfv_solve_options {
    const char* scheme;       /* mpfa-up1 | mpfa-up2 | fitted-mpfa-up1 |
                               * fitted-mpfa-up2; NULL = mpfa-up1 */
    double theta;             /* time-integrator blend in [0, 1] */
    double dtau;              /* requested step; rounded so steps cover maturity */
    int upwind1_squared;      /* 0 = donor-cell weights, 1 = velocity-weighted */
    int velocity_at_midpoint; /* 0 = node evaluation, 1 = face midpoint */
    int discounted_legs;      /* closed form used for boundary and reference */
    int zero_axis_boundary;   /* 1 = force x=0 / y=0 edges to zero */
} bsfv_solve_options;

/* Options with the library defaults (mpfa-up1, theta 0.5, dtau 0.01). */
BSFV_API bsfv_solve_options bsfv_default_solve_options(void);

typedef struct bsfv_solution bsfv_solution;

/* March the payoff to maturity on the given grid; the solution keeps the
 * numeric and closed-form values at every interior node. */
BSFV_API bsfv_status bsfv_solve(const bsfv_grid* grid, const bsfv_model_params* params,
                                const bsfv_solve_options* options, bsfv_solution** out);

BSFV_API void bsfv_solution_release(bsfv_solution* solution);

/* Numeric value at interior node (i, j), 1-based. */
BSFV_API bsfv_status bsfv_solution_value(const bsfv_solution* solution, int i, int j,
                                         double* out);

/* Measure-weighted relative L2 error and maximum absolute deviation from
 * the closed form. Either output pointer may be NULL. */
BSFV_API bsfv_status bsfv_solution_stats(const bsfv_solution* solution, double* rel_l2,
                                         double* max_abs);

/* "x y numeric analytic" rows over all interior nodes, row-major. */
BSFV_API bsfv_status bsfv_solution_write_surface(const bsfv_solution* solution,
                                                 const char* path);

/* -------- experiment driver -------- */

/* config_text holds flat key=value lines ('#' comments). Keys: preset,
 * scheme, n (comma list), x_max, y_max, sigma1, sigma2, rho, r, strike,
 * maturity, theta, dtau, grid, grade_focus, grade_strength, upwind1,
 * velocity_eval, variant, zero_axis_boundary, seed. */

/* Error-table sweep over the configured grid sizes; CSV written to path. */
BSFV_API bsfv_status bsfv_run_experiment(const char* config_text, const char* csv_path);

/* Solution surface at one grid size: "x y numeric analytic" rows. */
BSFV_API bsfv_status bsfv_dump_surface(const char* config_text, int n, const char* path);

/* Sparsity pattern of the system operator: "row col value" rows. */
BSFV_API bsfv_status bsfv_dump_sparsity(const char* config_text, int n, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* BSFV_H */
