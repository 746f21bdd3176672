#pragma once

#include <iosfwd>
#include <vector>

#include "core/types.hpp"

namespace bsfv {

/// One axis of the tensor-product mesh on [0, x_max].
///
/// Nodes x_0..x_{N+1} are the cell centers plus the two boundary points
/// (x_0 = 0, x_{N+1} = x_max). Cell faces sit at the midpoints between
/// consecutive nodes, with the boundary convention that the outermost faces
/// coincide with the boundary nodes, so the first and last cells are
/// half-cells pinned to the domain edge.
class Axis1D {
public:
    /// n_interior interior nodes; nodes/midpoints/widths sized accordingly.
    Axis1D(std::vector<double> nodes_in);

    int n_interior() const { return n_; }

    /// Node coordinate x_k, k = 0..N+1.
    double x(int k) const { return nodes_[static_cast<size_t>(k)]; }

    /// Face coordinate below node i: xm(i) = x_{i-1/2}, i = 0..N+2.
    /// xm(0) = x_0 and xm(N+2) = x_{N+1} (boundary faces pinned to the edge).
    double xm(int i) const { return midpoints_[static_cast<size_t>(i)]; }

    /// Cell width h_i = xm(i+1) - xm(i), i = 0..N+1 (0 and N+1 are half-cells).
    double h(int i) const { return widths_[static_cast<size_t>(i)]; }

    double x_max() const { return nodes_.back(); }

    const std::vector<double>& nodes() const { return nodes_; }

private:
    std::vector<double> nodes_;      // size N+2
    std::vector<double> midpoints_;  // size N+3
    std::vector<double> widths_;     // size N+2
    int n_ = 0;
};

/// Equally spaced interior nodes: spacing d = x_max/(N+1), x_k = k*d.
Axis1D build_uniform(int n_cells, double x_max);

/// Node distribution refined near 0 and near `focus`. Spacings grow
/// geometrically with distance from the nearest attractor; the largest-to-
/// smallest spacing ratio approaches 1+strength. strength = 0 reproduces
/// build_uniform bit-for-bit.
Axis1D build_graded(int n_cells, double x_max, double focus, double strength);

struct TensorGrid {
    Axis1D x;
    Axis1D y;

    int n() const { return x.n_interior(); }
};

TensorGrid make_grid(Axis1D x, Axis1D y);

/// Values attached to the interior cell centers, row-major (j fastest).
using GridFunction = std::vector<double>;

/// Area of control volume C_ij = h_i * l_j, 1 <= i,j <= N.
double cell_measure(const TensorGrid& grid, int i, int j);

/// Flat row-major index of interior node (i,j), i,j = 1..N, j fastest.
inline int flat_index(int i, int j, int n) { return (i - 1) * n + (j - 1); }

/// Serialize nodes as "index coordinate" rows, one per line.
void write_axis(const Axis1D& axis, std::ostream& out);

} // namespace bsfv
