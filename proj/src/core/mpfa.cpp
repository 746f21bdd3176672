#include "core/mpfa.hpp"

#include <array>
#include <cmath>
#include <string>

namespace bsfv {

namespace {

// Local cell k reads the edge unknown of one vertical and one horizontal
// half-edge; both sit axis-aligned with the cell center.
constexpr std::array<int, 4> kVerticalEdgeOf{0, 0, 1, 1};
constexpr std::array<int, 4> kHorizontalEdgeOf{2, 3, 2, 3};

// Half-edge p separates local cells (first, second); the edge normal points
// from first toward second.
constexpr std::array<std::array<int, 2>, 4> kEdgeCells{{{0, 1}, {2, 3}, {0, 2}, {1, 3}}};

// One-sided half-edge flux as a linear form in the four edge unknowns v and
// the four cell values u.
struct OneSidedFlux {
    std::array<double, 4> v{};
    std::array<double, 4> u{};
};

OneSidedFlux one_sided_flux(const LocalGeometry& g, const std::array<SymTensor2, 4>& m,
                            int cell, int edge) {
    const double dx = g.xs - g.center[static_cast<size_t>(cell)].x;
    const double dy = g.ys - g.center[static_cast<size_t>(cell)].y;
    const SymTensor2& t = m[static_cast<size_t>(cell)];
    const bool vertical = edge < 2;
    const double along_x = vertical ? t.m11 : t.m12;
    const double along_y = vertical ? t.m12 : t.m22;
    const double gamma = g.gamma[static_cast<size_t>(edge)];

    OneSidedFlux f;
    const int ve = kVerticalEdgeOf[static_cast<size_t>(cell)];
    const int he = kHorizontalEdgeOf[static_cast<size_t>(cell)];
    f.v[static_cast<size_t>(ve)] += gamma * along_x / dx;
    f.v[static_cast<size_t>(he)] += gamma * along_y / dy;
    f.u[static_cast<size_t>(cell)] -= gamma * (along_x / dx + along_y / dy);
    return f;
}

using Mat4 = std::array<std::array<double, 4>, 4>;

// LU with partial pivoting; returns false on an exactly zero pivot column.
bool lu_factor(Mat4& a, std::array<int, 4>& perm) {
    for (int k = 0; k < 4; ++k) perm[static_cast<size_t>(k)] = k;
    for (int k = 0; k < 4; ++k) {
        int pivot = k;
        for (int r = k + 1; r < 4; ++r) {
            if (std::fabs(a[static_cast<size_t>(r)][static_cast<size_t>(k)]) >
                std::fabs(a[static_cast<size_t>(pivot)][static_cast<size_t>(k)])) {
                pivot = r;
            }
        }
        if (a[static_cast<size_t>(pivot)][static_cast<size_t>(k)] == 0.0) return false;
        std::swap(a[static_cast<size_t>(k)], a[static_cast<size_t>(pivot)]);
        std::swap(perm[static_cast<size_t>(k)], perm[static_cast<size_t>(pivot)]);
        for (int r = k + 1; r < 4; ++r) {
            const double factor = a[static_cast<size_t>(r)][static_cast<size_t>(k)] /
                                  a[static_cast<size_t>(k)][static_cast<size_t>(k)];
            a[static_cast<size_t>(r)][static_cast<size_t>(k)] = factor;
            for (int c = k + 1; c < 4; ++c) {
                a[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
                    factor * a[static_cast<size_t>(k)][static_cast<size_t>(c)];
            }
        }
    }
    return true;
}

std::array<double, 4> lu_solve(const Mat4& lu, const std::array<int, 4>& perm,
                               const std::array<double, 4>& b) {
    std::array<double, 4> x{};
    for (int r = 0; r < 4; ++r) {
        double s = b[static_cast<size_t>(perm[static_cast<size_t>(r)])];
        for (int c = 0; c < r; ++c) {
            s -= lu[static_cast<size_t>(r)][static_cast<size_t>(c)] * x[static_cast<size_t>(c)];
        }
        x[static_cast<size_t>(r)] = s;
    }
    for (int r = 3; r >= 0; --r) {
        double s = x[static_cast<size_t>(r)];
        for (int c = r + 1; c < 4; ++c) {
            s -= lu[static_cast<size_t>(r)][static_cast<size_t>(c)] * x[static_cast<size_t>(c)];
        }
        x[static_cast<size_t>(r)] = s / lu[static_cast<size_t>(r)][static_cast<size_t>(r)];
    }
    return x;
}

double inf_norm(const Mat4& a) {
    double best = 0.0;
    for (const auto& row : a) {
        double s = 0.0;
        for (double e : row) s += std::fabs(e);
        best = std::max(best, s);
    }
    return best;
}

} // namespace

LocalGeometry interaction_geometry(const TensorGrid& grid, int i, int j) {
    const int n = grid.n();
    require(i >= 1 && i <= n + 1 && j >= 1 && j <= n + 1,
            "interaction_geometry: index out of range");

    LocalGeometry g;
    g.xs = grid.x.xm(i);
    g.ys = grid.y.xm(j);
    g.center = {Vec2{grid.x.x(i - 1), grid.y.x(j - 1)}, Vec2{grid.x.x(i), grid.y.x(j - 1)},
                Vec2{grid.x.x(i - 1), grid.y.x(j)}, Vec2{grid.x.x(i), grid.y.x(j)}};
    g.edge_point = {Vec2{g.xs, grid.y.x(j - 1)}, Vec2{g.xs, grid.y.x(j)},
                    Vec2{grid.x.x(i - 1), g.ys}, Vec2{grid.x.x(i), g.ys}};
    g.gamma = {g.ys - grid.y.x(j - 1), grid.y.x(j) - g.ys, g.xs - grid.x.x(i - 1),
               grid.x.x(i) - g.xs};
    g.normal = {Vec2{1.0, 0.0}, Vec2{1.0, 0.0}, Vec2{0.0, 1.0}, Vec2{0.0, 1.0}};
    return g;
}

Vec2 triangle_gradient(const std::array<Vec2, 3>& p, const std::array<double, 3>& values) {
    const double ax = p[1].x - p[0].x;
    const double ay = p[1].y - p[0].y;
    const double bx = p[2].x - p[0].x;
    const double by = p[2].y - p[0].y;
    const double det = ax * by - ay * bx;

    double scale = 0.0;
    for (const Vec2& v : p) {
        for (const Vec2& w : p) {
            scale = std::max(scale, std::hypot(v.x - w.x, v.y - w.y));
        }
    }
    require(std::fabs(det) > 1e-14 * scale * scale,
            "triangle_gradient: degenerate triangle");

    const double df1 = values[1] - values[0];
    const double df2 = values[2] - values[0];
    return Vec2{(df1 * by - df2 * ay) / det, (ax * df2 - bx * df1) / det};
}

LocalTransmissibility local_transmissibility(const LocalGeometry& geom,
                                             const std::array<SymTensor2, 4>& tensors) {
    Mat4 a{};      // continuity rows over edge unknowns
    Mat4 b{};      // continuity rows over cell values
    Mat4 c_one{};  // chosen one-sided flux over edge unknowns
    Mat4 f_one{};  // chosen one-sided flux over cell values

    for (int p = 0; p < 4; ++p) {
        const int side_a = kEdgeCells[static_cast<size_t>(p)][0];
        const int side_b = kEdgeCells[static_cast<size_t>(p)][1];
        const OneSidedFlux fa = one_sided_flux(geom, tensors, side_a, p);
        const OneSidedFlux fb = one_sided_flux(geom, tensors, side_b, p);
        for (int m = 0; m < 4; ++m) {
            a[static_cast<size_t>(p)][static_cast<size_t>(m)] =
                fa.v[static_cast<size_t>(m)] - fb.v[static_cast<size_t>(m)];
            b[static_cast<size_t>(p)][static_cast<size_t>(m)] =
                fb.u[static_cast<size_t>(m)] - fa.u[static_cast<size_t>(m)];
            c_one[static_cast<size_t>(p)][static_cast<size_t>(m)] = fa.v[static_cast<size_t>(m)];
            f_one[static_cast<size_t>(p)][static_cast<size_t>(m)] = fa.u[static_cast<size_t>(m)];
        }
    }

    Mat4 lu = a;
    std::array<int, 4> perm{};
    require(lu_factor(lu, perm), "local_transmissibility: singular continuity system",
            Status::SingularOperator);

    // x = A^{-1} B, column by column; A^{-1} itself for the condition estimate.
    Mat4 x{};
    Mat4 a_inv{};
    for (int col = 0; col < 4; ++col) {
        std::array<double, 4> bc{};
        std::array<double, 4> ec{};
        for (int r = 0; r < 4; ++r) {
            bc[static_cast<size_t>(r)] = b[static_cast<size_t>(r)][static_cast<size_t>(col)];
        }
        ec[static_cast<size_t>(col)] = 1.0;
        const std::array<double, 4> xc = lu_solve(lu, perm, bc);
        const std::array<double, 4> ic = lu_solve(lu, perm, ec);
        for (int r = 0; r < 4; ++r) {
            x[static_cast<size_t>(r)][static_cast<size_t>(col)] = xc[static_cast<size_t>(r)];
            a_inv[static_cast<size_t>(r)][static_cast<size_t>(col)] = ic[static_cast<size_t>(r)];
        }
    }
    require(inf_norm(a) * inf_norm(a_inv) <= 1e14,
            "local_transmissibility: continuity system condition estimate above 1e14",
            Status::SingularOperator);

    LocalTransmissibility t;
    for (int p = 0; p < 4; ++p) {
        for (int m = 0; m < 4; ++m) {
            double s = f_one[static_cast<size_t>(p)][static_cast<size_t>(m)];
            for (int k = 0; k < 4; ++k) {
                s += c_one[static_cast<size_t>(p)][static_cast<size_t>(k)] *
                     x[static_cast<size_t>(k)][static_cast<size_t>(m)];
            }
            t.t[static_cast<size_t>(p)][static_cast<size_t>(m)] = s;
        }
    }
    return t;
}

TensorProvider model_tensor_provider(const ModelParams& params, const TensorGrid& grid) {
    // params is captured by value; the grid reference must outlive the provider.
    return [params, &grid](int i, int j) { return averaged_tensor_extended(params, grid, i, j); };
}

AssemblyParts assemble_diffusion(const TensorGrid& grid, const TensorProvider& tensor,
                                 const FaceFilter& filter) {
    const int n = grid.n();
    AssemblyParts parts;
    parts.interior.reserve(static_cast<size_t>(n) * n * 12);

    // Per half-edge: (local cell, sign, face of that cell the half-edge lies on).
    struct Side {
        int cell;
        double sign;
        Face face;
    };
    static constexpr std::array<std::array<Side, 2>, 4> kSides{{
        {{{0, 1.0, Face::East}, {1, -1.0, Face::West}}},
        {{{2, 1.0, Face::East}, {3, -1.0, Face::West}}},
        {{{0, 1.0, Face::North}, {2, -1.0, Face::South}}},
        {{{1, 1.0, Face::North}, {3, -1.0, Face::South}}},
    }};

    for (int i = 1; i <= n + 1; ++i) {
        for (int j = 1; j <= n + 1; ++j) {
            const LocalGeometry geom = interaction_geometry(grid, i, j);
            const std::array<SymTensor2, 4> tensors{tensor(i - 1, j - 1), tensor(i, j - 1),
                                                    tensor(i - 1, j), tensor(i, j)};
            LocalTransmissibility t;
            try {
                t = local_transmissibility(geom, tensors);
            } catch (const Error& e) {
                throw Error(e.status(), std::string(e.what()) + " at interaction volume (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
            }

            const std::array<std::array<int, 2>, 4> cells{{{i - 1, j - 1},
                                                           {i, j - 1},
                                                           {i - 1, j},
                                                           {i, j}}};
            for (int p = 0; p < 4; ++p) {
                for (const Side& side : kSides[static_cast<size_t>(p)]) {
                    const int ci = cells[static_cast<size_t>(side.cell)][0];
                    const int cj = cells[static_cast<size_t>(side.cell)][1];
                    if (ci < 1 || ci > n || cj < 1 || cj > n) continue;
                    if (!filter(ci, cj, side.face)) continue;
                    const int row = flat_index(ci, cj, n);
                    for (int m = 0; m < 4; ++m) {
                        const double value =
                            side.sign * t.t[static_cast<size_t>(p)][static_cast<size_t>(m)];
                        if (value == 0.0) continue;
                        emit(parts, row, cells[static_cast<size_t>(m)][0],
                             cells[static_cast<size_t>(m)][1], n, value);
                    }
                }
            }
        }
    }
    return parts;
}

AssemblyParts assemble_diffusion(const TensorGrid& grid, const ModelParams& params,
                                 const FaceFilter& filter) {
    return assemble_diffusion(grid, model_tensor_provider(params, grid), filter);
}

} // namespace bsfv
