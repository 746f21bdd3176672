#pragma once

#include "core/assembly.hpp"
#include "core/model.hpp"

namespace bsfv {

/// Weights of a one-sided three-point first-derivative stencil.
/// For values at s, s + h1, s + h1 + h2,
///   U'(s) ~= a*U(s + h1 + h2) + b*U(s + h1) + c*U(s),
/// exact for every quadratic polynomial:
///   a + b + c = 0,  a*(h1+h2) + b*h1 = 1,  a*(h1+h2)^2 + b*h1^2 = 0.
struct DerivStencil3 {
    double a = 0.0; // far node, distance h1 + h2
    double b = 0.0; // near node, distance h1
    double c = 0.0; // center node
};

/// Solve the three matching conditions for the stencil weights.
DerivStencil3 deriv_coeffs_3pt(double h1, double h2);

/// How a face flux weights the adjacent unknowns by the face velocity v:
/// Donor   - classic donor-cell weights max(v,0) / min(v,0);
/// Squared - velocity-weighted variant v*max(v,0) / v*min(v,0).
enum class Upwind1Kind { Donor, Squared };

/// Where the face velocity is evaluated: at the grid node on the positive
/// side of the face (Node) or at the face coordinate itself (Midpoint).
enum class VelocityEval { Node, Midpoint };

/// Order of the convection discretization.
enum class UpwindOrder { First = 1, Second = 2 };

struct ConvectionOptions {
    Upwind1Kind kind = Upwind1Kind::Donor;
    VelocityEval velocity_eval = VelocityEval::Node;
};

/// Emit the first-order upwind convection row of control volume (i,j):
/// the outflow-minus-inflow balance of donor-weighted face fluxes.
/// Faces rejected by the filter contribute nothing (their flux is supplied
/// by another discretization, e.g. the fitted edge fluxes).
void upwind1_row(const TensorGrid& grid, const PdeCoefficients& coeffs,
                 const ConvectionOptions& opts, int i, int j,
                 const FaceFilter& filter, AssemblyParts& parts);

/// Emit the convection row of control volume (i,j) for the second-order
/// scheme: cell-centred velocity times a one-sided three-point derivative
/// plus the velocity-divergence reaction, all scaled by the cell measure.
/// Rows touching the frame (i or j in {1, N}) fall back to the first-order
/// flux balance over all faces.
void upwind2_row(const TensorGrid& grid, const PdeCoefficients& coeffs,
                 const ConvectionOptions& opts, int i, int j,
                 AssemblyParts& parts);

/// First-order upwind discretization of div(f U) over all control volumes.
AssemblyParts assemble_upwind1(const TensorGrid& grid, const ModelParams& params,
                               const ConvectionOptions& opts = {},
                               const FaceFilter& filter = all_faces);

/// Second-order upwind discretization of f . grad(U) + omega U (times cell
/// measure) with first-order fallback on frame-adjacent rows. Requires at
/// least four interior nodes per axis.
AssemblyParts assemble_upwind2(const TensorGrid& grid, const ModelParams& params,
                               const ConvectionOptions& opts = {});

} // namespace bsfv
