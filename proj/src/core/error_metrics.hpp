#pragma once

#include <span>
#include <string>

#include "core/grid.hpp"

namespace bsfv {

/// Accuracy summary of one solver run against the closed form.
struct ErrorReport {
    double rel_l2 = 0.0;
    double max_abs = 0.0;
    int n = 0;           // interior nodes per axis
    std::string scheme;  // filled by the experiment driver
    double seconds = 0.0; // filled by the experiment driver
};

/// Deterministic pairwise summation (order-independent of platform reduction
/// quirks, and more accurate than a running sum).
double pairwise_sum(std::span<const double> values);

/// Cell-measure-weighted relative L2 deviation of numeric from analytic,
///   sqrt(sum meas (U - U_ana)^2) / sqrt(sum meas U_ana^2),
/// plus the pointwise maximum deviation.
ErrorReport rel_l2_error(const GridFunction& numeric, const GridFunction& analytic,
                         const TensorGrid& grid);

} // namespace bsfv
