#pragma once

#include "viscid/grid.hpp"

namespace viscid {

/// Density, per-cell dynamic viscosity and time step.
struct FluidParams {
  double rho = 1000.0;  // kg/m^3
  Field2 mu;            // Pa s, shape (nx, ny)
  double dt = 1.0 / 300.0;

  static FluidParams uniform(const GridDims& dims, double rho, double mu, double dt) {
    FluidParams p;
    p.rho = rho;
    p.mu = Field2(dims.nx, dims.ny, mu);
    p.dt = dt;
    p.validate(dims);
    return p;
  }

  /// Throws InvalidArgument / ShapeError when the invariants do not hold.
  void validate(const GridDims& dims) const;

  /// Node viscosity: mean of the existing adjacent cells.
  double mu_node(int i, int j) const;
};

}  // namespace viscid
