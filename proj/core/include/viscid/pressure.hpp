#pragma once

#include <cstdint>

#include "viscid/fluid_params.hpp"
#include "viscid/grid.hpp"

namespace viscid {

enum class CellLabel : std::uint8_t { Air = 0, Fluid = 1, Solid = 2 };

struct CellLabels {
  Array2<CellLabel> label;  // (nx, ny)

  /// When true the domain border acts as a wall; otherwise air lies beyond it.
  bool closed_border = true;
};

/// SOLID where the solid distance at the cell center is <= 0, FLUID where the
/// corner-averaged liquid distance at the center is negative, AIR otherwise.
CellLabels classify_cells(const LevelSet2& phi, const SolidSdf2& solid, const GridDims& dims, bool closed_border);

struct ProjectionResult {
  MacVelocity2 velocity;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// Pressure projection on a 5-point stencil: p = 0 in air, no flux through
/// solid faces. Solid faces take the solid velocity. On FLUID cells the
/// post-projection divergence satisfies ||div||_2 <= tol * ||div_in||_2.
ProjectionResult project(const MacVelocity2& vel, const CellLabels& labels, const SolidSdf2& solid,
                         const FluidParams& params, const GridDims& dims, double tol = 1e-6);

/// Per-cell discrete divergence (1/s).
Field2 divergence(const MacVelocity2& vel, const GridDims& dims);

/// Sets every face covered by a solid (D <= 0 at the face) or adjacent to a
/// SOLID cell to the solid velocity.
void enforce_solid_faces(MacVelocity2& vel, const CellLabels& labels, const SolidSdf2& solid, const GridDims& dims);

}  // namespace viscid
