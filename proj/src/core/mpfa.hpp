#pragma once

#include <array>
#include <functional>

#include "core/assembly.hpp"
#include "core/grid.hpp"
#include "core/model.hpp"
#include "core/types.hpp"

namespace bsfv {

/// Geometry of one interaction volume: the rectangle spanned by the four
/// cell centers around the cell corner (x_{i-1/2}, y_{j-1/2}), i,j = 1..N+1.
/// Local cell order: 0=(i-1,j-1), 1=(i,j-1), 2=(i-1,j), 3=(i,j).
/// Local half-edge order: 0 = lower vertical, 1 = upper vertical,
/// 2 = left horizontal, 3 = right horizontal. Normals are the global unit
/// directions (+x for vertical edges, +y for horizontal edges).
struct LocalGeometry {
    std::array<Vec2, 4> center;      // cell centers
    std::array<Vec2, 4> edge_point;  // flux-continuity points, one per half-edge
    std::array<double, 4> gamma;     // half-edge lengths
    std::array<Vec2, 4> normal;      // unit normals
    double xs = 0.0;                 // x_{i-1/2}, shared x of the vertical edges
    double ys = 0.0;                 // y_{j-1/2}, shared y of the horizontal edges
};

LocalGeometry interaction_geometry(const TensorGrid& grid, int i, int j);

/// 4x4 map from the four cell-center values (local cell order) to the four
/// half-edge fluxes (local edge order). Rows sum to zero.
struct LocalTransmissibility {
    std::array<std::array<double, 4>, 4> t{};
};

/// Gradient of the unique linear interpolant through three non-collinear
/// points with given values.
Vec2 triangle_gradient(const std::array<Vec2, 3>& vertices, const std::array<double, 3>& values);

/// Eliminate the edge unknowns by flux continuity and return the resulting
/// transmissibility. Throws when the continuity system is numerically
/// singular (condition estimate above 1e14).
LocalTransmissibility local_transmissibility(const LocalGeometry& geom,
                                             const std::array<SymTensor2, 4>& tensors);

/// Tensor on the extended cell (i,j), 0 <= i,j <= N+1 (frame cells are the
/// boundary half-cells). Override point for stencil-collapse tests.
using TensorProvider = std::function<SymTensor2(int i, int j)>;

TensorProvider model_tensor_provider(const ModelParams& params, const TensorGrid& grid);

/// Assemble the diffusion balance: for each interior cell the signed sum of
/// its face fluxes, each face composed of two half-edge fluxes from the two
/// interaction volumes meeting on it. Rows are not scaled by cell measure.
AssemblyParts assemble_diffusion(const TensorGrid& grid, const TensorProvider& tensor,
                                 const FaceFilter& filter = all_faces);

AssemblyParts assemble_diffusion(const TensorGrid& grid, const ModelParams& params,
                                 const FaceFilter& filter = all_faces);

} // namespace bsfv
