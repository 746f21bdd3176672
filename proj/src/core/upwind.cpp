#include "core/upwind.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace bsfv {

DerivStencil3 deriv_coeffs_3pt(double h1, double h2) {
    require(std::isfinite(h1) && std::isfinite(h2) && h1 > 0.0 && h2 > 0.0,
            "deriv_coeffs_3pt: spacings must be positive and finite");
    DerivStencil3 s;
    s.a = -h1 / (h2 * (h1 + h2));
    s.b = (h1 + h2) / (h1 * h2);
    s.c = -(s.a + s.b);
    return s;
}

namespace {

/// Upwind/downwind weights of one face flux for the chosen variant.
std::pair<double, double> face_weights(double v, Upwind1Kind kind) {
    double up = std::max(v, 0.0);
    double down = std::min(v, 0.0);
    if (kind == Upwind1Kind::Squared) {
        up *= v;
        down *= v;
    }
    return {up, down};
}

/// Coordinate at which the velocity of face k-1/2 of an axis is evaluated:
/// the node on the positive side (index k) or the face midpoint itself.
double face_coord(const Axis1D& axis, int k, VelocityEval eval) {
    return eval == VelocityEval::Node ? axis.x(k) : axis.xm(k);
}

/// One-sided three-point derivative in one axis direction, scaled by
/// meas * v and accumulated into the row. The stencil leans against the
/// flow: v > 0 uses nodes k, k+1, k+2; v < 0 mirrors to k, k-1, k-2.
void one_sided_derivative(AssemblyParts& parts, const TensorGrid& grid, int row,
                          int i, int j, bool along_x, double v, double meas) {
    if (v == 0.0) return;
    const Axis1D& axis = along_x ? grid.x : grid.y;
    const int k = along_x ? i : j;
    const int dir = v > 0.0 ? +1 : -1;
    const double h1 = dir > 0 ? axis.x(k + 1) - axis.x(k) : axis.x(k) - axis.x(k - 1);
    const double h2 = dir > 0 ? axis.x(k + 2) - axis.x(k + 1) : axis.x(k - 1) - axis.x(k - 2);
    const DerivStencil3 s = deriv_coeffs_3pt(h1, h2);
    const double sign = dir > 0 ? 1.0 : -1.0; // mirrored stencil flips sign
    const int n = grid.n();
    auto put = [&](int offset, double weight) {
        const int ci = along_x ? i + dir * offset : i;
        const int cj = along_x ? j : j + dir * offset;
        emit(parts, row, ci, cj, n, meas * v * sign * weight);
    };
    put(2, s.a);
    put(1, s.b);
    put(0, s.c);
}

} // namespace

void upwind1_row(const TensorGrid& grid, const PdeCoefficients& coeffs,
                 const ConvectionOptions& opts, int i, int j,
                 const FaceFilter& filter, AssemblyParts& parts) {
    const Axis1D& gx = grid.x;
    const Axis1D& gy = grid.y;
    const int n = grid.n();
    require(i >= 1 && i <= n && j >= 1 && j <= n, "upwind1_row: cell index out of range");
    const int row = flat_index(i, j, n);
    const double hi = gx.h(i);
    const double lj = gy.h(j);

    // Row = (east + north - west - south) face fluxes; each flux couples the
    // two cells adjacent to the face through the donor-cell rule.
    if (filter(i, j, Face::East)) {
        const auto [up, down] =
            face_weights(coeffs.p_coef * face_coord(gx, i + 1, opts.velocity_eval), opts.kind);
        emit(parts, row, i, j, n, lj * up);
        emit(parts, row, i + 1, j, n, lj * down);
    }
    if (filter(i, j, Face::West)) {
        const auto [up, down] =
            face_weights(coeffs.p_coef * face_coord(gx, i, opts.velocity_eval), opts.kind);
        emit(parts, row, i - 1, j, n, -lj * up);
        emit(parts, row, i, j, n, -lj * down);
    }
    if (filter(i, j, Face::North)) {
        const auto [up, down] =
            face_weights(coeffs.q_coef * face_coord(gy, j + 1, opts.velocity_eval), opts.kind);
        emit(parts, row, i, j, n, hi * up);
        emit(parts, row, i, j + 1, n, hi * down);
    }
    if (filter(i, j, Face::South)) {
        const auto [up, down] =
            face_weights(coeffs.q_coef * face_coord(gy, j, opts.velocity_eval), opts.kind);
        emit(parts, row, i, j - 1, n, -hi * up);
        emit(parts, row, i, j, n, -hi * down);
    }
}

void upwind2_row(const TensorGrid& grid, const PdeCoefficients& coeffs,
                 const ConvectionOptions& opts, int i, int j,
                 AssemblyParts& parts) {
    const int n = grid.n();
    require(n >= 4, "second-order upwinding needs at least 4 interior nodes per axis");
    require(i >= 1 && i <= n && j >= 1 && j <= n, "upwind2_row: cell index out of range");
    if (i == 1 || i == n || j == 1 || j == n) {
        upwind1_row(grid, coeffs, opts, i, j, all_faces, parts);
        return;
    }
    const int row = flat_index(i, j, n);
    const double meas = cell_measure(grid, i, j);
    one_sided_derivative(parts, grid, row, i, j, /*along_x=*/true,
                         coeffs.p_coef * grid.x.x(i), meas);
    one_sided_derivative(parts, grid, row, i, j, /*along_x=*/false,
                         coeffs.q_coef * grid.y.x(j), meas);
    parts.interior.push_back(Triplet{row, row, meas * coeffs.omega});
}

AssemblyParts assemble_upwind1(const TensorGrid& grid, const ModelParams& params,
                               const ConvectionOptions& opts, const FaceFilter& filter) {
    params.validate();
    const PdeCoefficients coeffs = derive_coefficients(params);
    const int n = grid.n();
    AssemblyParts parts;
    parts.interior.reserve(static_cast<std::size_t>(n) * n * 5);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            upwind1_row(grid, coeffs, opts, i, j, filter, parts);
        }
    }
    return parts;
}

AssemblyParts assemble_upwind2(const TensorGrid& grid, const ModelParams& params,
                               const ConvectionOptions& opts) {
    params.validate();
    const PdeCoefficients coeffs = derive_coefficients(params);
    const int n = grid.n();
    require(n >= 4, "second-order upwinding needs at least 4 interior nodes per axis");
    AssemblyParts parts;
    parts.interior.reserve(static_cast<std::size_t>(n) * n * 7);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            upwind2_row(grid, coeffs, opts, i, j, parts);
        }
    }
    return parts;
}

} // namespace bsfv
