#include "core/grid.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace bsfv {

Axis1D::Axis1D(std::vector<double> nodes_in) : nodes_(std::move(nodes_in)) {
    require(nodes_.size() >= 4, "axis needs at least 2 interior nodes");
    n_ = static_cast<int>(nodes_.size()) - 2;
    require(nodes_.front() == 0.0, "axis must start at 0");
    for (size_t k = 1; k < nodes_.size(); ++k) {
        require(std::isfinite(nodes_[k]) && nodes_[k] > nodes_[k - 1],
                "axis nodes must be finite and strictly increasing");
    }

    midpoints_.resize(nodes_.size() + 1);
    midpoints_.front() = nodes_.front();
    midpoints_.back() = nodes_.back();
    for (size_t k = 1; k < nodes_.size(); ++k) {
        midpoints_[k] = 0.5 * (nodes_[k - 1] + nodes_[k]);
    }

    widths_.resize(nodes_.size());
    for (size_t i = 0; i < widths_.size(); ++i) {
        widths_[i] = midpoints_[i + 1] - midpoints_[i];
        require(widths_[i] > 0.0, "cell widths must be positive");
    }
}

Axis1D build_uniform(int n_cells, double x_max) {
    require(n_cells >= 3, "build_uniform: need at least 3 interior nodes");
    require(std::isfinite(x_max) && x_max > 0.0, "build_uniform: x_max must be positive");

    const double d = x_max / static_cast<double>(n_cells + 1);
    std::vector<double> nodes(static_cast<size_t>(n_cells) + 2);
    for (int k = 0; k <= n_cells + 1; ++k) {
        nodes[static_cast<size_t>(k)] = static_cast<double>(k) * d;
    }
    nodes.back() = x_max;
    return Axis1D(std::move(nodes));
}

Axis1D build_graded(int n_cells, double x_max, double focus, double strength) {
    require(n_cells >= 3, "build_graded: need at least 3 interior nodes");
    require(std::isfinite(x_max) && x_max > 0.0, "build_graded: x_max must be positive");
    require(std::isfinite(focus) && focus > 0.0 && focus < x_max,
            "build_graded: focus must lie strictly inside (0, x_max)");
    require(std::isfinite(strength) && strength >= 0.0,
            "build_graded: strength must be non-negative");

    if (strength == 0.0) return build_uniform(n_cells, x_max);

    const double ratio = 1.0 + strength;
    // Largest distance to the nearest attractor over [0, x_max]; attractors
    // are 0 and focus, so the maximum is at focus/2 or at x_max.
    const double dist_scale = std::max(0.5 * focus, x_max - focus);
    // Node density, highest (= 1) at the attractors. Equidistributing its
    // integral makes the local spacing proportional to 1/density at the
    // node's actual position, so the spacing ratio approaches 1 + strength.
    const auto density = [&](double x) {
        const double dist = std::min(x, std::fabs(x - focus));
        return std::pow(ratio, -dist / dist_scale);
    };

    // Cumulative trapezoid mass on a fixed fine lattice, inverted per node.
    const int samples = 1 << 14;
    const double dx = x_max / samples;
    std::vector<double> cumulative(static_cast<size_t>(samples) + 1, 0.0);
    double prev = density(0.0);
    for (int k = 1; k <= samples; ++k) {
        const double next = density(dx * k);
        cumulative[static_cast<size_t>(k)] =
            cumulative[static_cast<size_t>(k) - 1] + 0.5 * (prev + next) * dx;
        prev = next;
    }

    std::vector<double> nodes(static_cast<size_t>(n_cells) + 2);
    nodes.front() = 0.0;
    nodes.back() = x_max;
    const double total = cumulative.back();
    int seg = 0;
    for (int k = 1; k <= n_cells; ++k) {
        const double target = total * static_cast<double>(k) / (n_cells + 1);
        while (seg + 1 < samples && cumulative[static_cast<size_t>(seg) + 1] < target) ++seg;
        const double lo = cumulative[static_cast<size_t>(seg)];
        const double hi = cumulative[static_cast<size_t>(seg) + 1];
        nodes[static_cast<size_t>(k)] = dx * (seg + (target - lo) / (hi - lo));
    }
    return Axis1D(std::move(nodes));
}

TensorGrid make_grid(Axis1D x, Axis1D y) {
    require(x.n_interior() == y.n_interior(),
            "make_grid: axes must have the same interior node count");
    return TensorGrid{std::move(x), std::move(y)};
}

double cell_measure(const TensorGrid& grid, int i, int j) {
    require(i >= 1 && i <= grid.x.n_interior() && j >= 1 && j <= grid.y.n_interior(),
            "cell_measure: interior index out of range");
    return grid.x.h(i) * grid.y.h(j);
}

void write_axis(const Axis1D& axis, std::ostream& out) {
    char line[64];
    for (int k = 0; k <= axis.n_interior() + 1; ++k) {
        std::snprintf(line, sizeof line, "%d %.17g\n", k, axis.x(k));
        out << line;
    }
}

} // namespace bsfv
