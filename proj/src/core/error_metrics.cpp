#include "core/error_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/types.hpp"

namespace bsfv {

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 16) {
        double sum = 0.0;
        for (const double v : values) sum += v;
        return sum;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

ErrorReport rel_l2_error(const GridFunction& numeric, const GridFunction& analytic,
                         const TensorGrid& grid) {
    const int n = grid.n();
    const std::size_t count = static_cast<std::size_t>(n) * n;
    require(numeric.size() == count && analytic.size() == count,
            "rel_l2_error: field sizes must match the grid");

    std::vector<double> diff_terms(count);
    std::vector<double> norm_terms(count);
    double max_abs = 0.0;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            const std::size_t idx = static_cast<std::size_t>(flat_index(i, j, n));
            const double meas = cell_measure(grid, i, j);
            const double d = numeric[idx] - analytic[idx];
            diff_terms[idx] = meas * d * d;
            norm_terms[idx] = meas * analytic[idx] * analytic[idx];
            max_abs = std::max(max_abs, std::abs(d));
        }
    }
    const double denom = pairwise_sum(norm_terms);
    require(denom > 0.0, "rel_l2_error: analytic field has zero weighted norm");

    ErrorReport report;
    report.rel_l2 = std::sqrt(pairwise_sum(diff_terms)) / std::sqrt(denom);
    report.max_abs = max_abs;
    report.n = n;
    return report;
}

} // namespace bsfv
