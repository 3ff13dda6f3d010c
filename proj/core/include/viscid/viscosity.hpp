#pragma once

#include <cstddef>
#include <vector>

#include "viscid/fluid_params.hpp"
#include "viscid/grid.hpp"
#include "viscid/sparse.hpp"

namespace viscid {

/// Role of a face in the implicit viscosity system.
enum class FaceRole : unsigned char {
  Free,      // solved for
  Solid,     // covered by a solid: takes the solid velocity
  Inactive,  // no liquid mass and no stress coupling: keeps its old velocity
};

/// Linear system whose solution minimizes the discrete viscous objective
///   sum_f rho V_f (u_f - u_f^old)^2
///   + 2 dt [ sum_c mu_c V_c (du/dx^2 + dv/dy^2) + sum_n mu_n V_n (du/dy + dv/dx)^2 / 2 ]
/// over the free faces. Cell terms cover every cell; node terms cover the
/// interior nodes, where both cross derivatives have samples on each side.
struct ViscousSystem {
  GridDims dims;
  SparseMatrix A;
  std::vector<double> b;
  std::vector<FaceRole> role;
  std::vector<double> fixed_value;  // value carried by Solid / Inactive rows

  int size() const noexcept { return A.rows(); }

  int u_index(int i, int j) const noexcept { return i + (dims.nx + 1) * j; }
  int v_index(int i, int j) const noexcept { return (dims.nx + 1) * dims.ny + i + dims.nx * j; }
};

struct SolveOptions {
  double tol = 1e-6;          // relative residual
  std::size_t max_iter = 0;   // 0 selects 10 * N
};

/// Flattens a velocity field into the system's unknown ordering and back.
std::vector<double> flatten(const MacVelocity2& vel);
MacVelocity2 unflatten(const std::vector<double>& x, const GridDims& dims);

/// Face roles for the given volumes and solids.
std::vector<FaceRole> classify_faces(const VolumeFractions2& vols, const SolidSdf2& solid, const FluidParams& params,
                                     const GridDims& dims);

ViscousSystem assemble_viscosity(const MacVelocity2& vel_old, const VolumeFractions2& vols, const SolidSdf2& solid,
                                 const FluidParams& params, const GridDims& dims);

struct LinearSolve {
  std::vector<double> x;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

LinearSolve solve_viscosity(const ViscousSystem& system, const SolveOptions& options = {},
                            const std::vector<double>& guess = {});

struct ViscosityResult {
  MacVelocity2 velocity;
  MacVelocity2 delta;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// One implicit viscosity update: assemble, solve, and report the change.
ViscosityResult viscosity_step(const MacVelocity2& vel_old, const VolumeFractions2& vols, const SolidSdf2& solid,
                               const FluidParams& params, const GridDims& dims, const SolveOptions& options = {});

}  // namespace viscid
