#pragma once

#include "core/assembly.hpp"
#include "core/model.hpp"
#include "core/upwind.hpp"

namespace bsfv {

/// Linear form of the flux through one degeneracy-region edge (the edges of
/// the first cell row/column, where the diffusion tensor degenerates):
///   flux = owner * U(cell) + neighbor * U(next cell along the edge)
///        + axis * U(Dirichlet node on the axis).
struct FittedFluxCoeffs {
    double owner = 0.0;
    double neighbor = 0.0;
    double axis = 0.0;
};

/// Flux through the south edge of cell (i,1), obtained from the exact linear
/// solution of the one-dimensional two-point problem in y on [0, y_1] plus a
/// cross-derivative correction along x. 1 <= i <= N.
FittedFluxCoeffs fitted_south_flux(const TensorGrid& grid, const ModelParams& params, int i);

/// Flux through the west edge of cell (1,j); mirror of fitted_south_flux
/// with the roles of the axes swapped. 1 <= j <= N.
FittedFluxCoeffs fitted_west_flux(const TensorGrid& grid, const ModelParams& params, int j);

/// Full spatial flux operator of the fitted scheme: fitted fluxes on the
/// degeneracy-region edges, multi-point diffusion plus upwind convection of
/// the requested order everywhere else. Rows with i >= 2 and j >= 2 are
/// identical to the unfitted assembly of the same order.
AssemblyParts assemble_fitted(const TensorGrid& grid, const ModelParams& params,
                              UpwindOrder order, const ConvectionOptions& opts = {});

} // namespace bsfv
