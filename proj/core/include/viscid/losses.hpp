#pragma once

#include "viscid/fluid_params.hpp"
#include "viscid/grid.hpp"

namespace viscid {

struct LossReport {
  double l2 = 0.0;
  double l_v = 0.0;
  double inertia_term = 0.0;
  double dissipation_term = 0.0;
};

/// Variational loss on the full grid:
///   rho * mean_u (u - u_old)^2 + rho * mean_v (v - v_old)^2
///   + 2 dt * mean_cells mu |sym(grad u)|_F^2
/// Each mean divides by the sample count of its family, which reduces to
/// 1/(n(n+1)) and 1/n^2 on square grids. Cross derivatives at a cell are the
/// mean of its four node values. `l2` is left at zero.
LossReport variational_loss(const MacVelocity2& vel, const MacVelocity2& vel_old, const FluidParams& params,
                            const GridDims& dims);

/// Same loss from a velocity change and the gradients of the new velocity;
/// used when only derivative channels of the old field are available.
LossReport variational_loss(const MacVelocity2& delta, const VelocityGradients2& grads_new, const FluidParams& params,
                            const GridDims& dims);

/// Mean over all u and v samples of the squared difference.
double l2_error(const MacVelocity2& pred, const MacVelocity2& truth);

/// The objective minimized by the implicit viscosity solver (see
/// ViscousSystem), integrated over cell area dx^2.
double viscous_objective(const MacVelocity2& vel, const MacVelocity2& vel_old, const VolumeFractions2& vols,
                         const FluidParams& params, const GridDims& dims);

/// Kinetic energy weighted by the solver's face masses: sum rho V_f u_f^2 dx^2 / 2.
double weighted_kinetic_energy(const MacVelocity2& vel, const VolumeFractions2& vols, const FluidParams& params,
                               const GridDims& dims);

/// Mass-weighted momentum (sum rho V_f u_f dx^2 over each face family).
Vec2 weighted_momentum(const MacVelocity2& vel, const VolumeFractions2& vols, const FluidParams& params,
                       const GridDims& dims);

}  // namespace viscid
