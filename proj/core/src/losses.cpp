#include "viscid/losses.hpp"

namespace viscid {

namespace {

double dissipation(const VelocityGradients2& g, const FluidParams& params, const GridDims& d) {
  double sum = 0.0;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      const double uy = 0.25 * ((g.du_dy(i, j) + g.du_dy(i + 1, j + 1)) + (g.du_dy(i + 1, j) + g.du_dy(i, j + 1)));
      const double vx = 0.25 * ((g.dv_dx(i, j) + g.dv_dx(i + 1, j + 1)) + (g.dv_dx(i + 1, j) + g.dv_dx(i, j + 1)));
      const double exy = 0.5 * (uy + vx);
      const double frob = g.du_dx(i, j) * g.du_dx(i, j) + g.dv_dy(i, j) * g.dv_dy(i, j) + 2.0 * exy * exy;
      sum += params.mu(i, j) * frob;
    }
  return 2.0 * params.dt * sum / (static_cast<double>(d.nx) * d.ny);
}

double mean_square(const Field2& f) {
  double s = 0.0;
  for (double x : f.data()) s += x * x;
  return f.empty() ? 0.0 : s / static_cast<double>(f.size());
}

}  // namespace

LossReport variational_loss(const MacVelocity2& delta, const VelocityGradients2& grads_new, const FluidParams& params,
                            const GridDims& dims) {
  require_shape(delta, dims, "variational_loss");
  params.validate(dims);
  LossReport r;
  r.inertia_term = params.rho * (mean_square(delta.u) + mean_square(delta.v));
  r.dissipation_term = dissipation(grads_new, params, dims);
  r.l_v = r.inertia_term + r.dissipation_term;
  return r;
}

LossReport variational_loss(const MacVelocity2& vel, const MacVelocity2& vel_old, const FluidParams& params,
                            const GridDims& dims) {
  require_shape(vel_old, dims, "variational_loss");
  return variational_loss(vel - vel_old, velocity_gradients(vel, dims), params, dims);
}

double l2_error(const MacVelocity2& pred, const MacVelocity2& truth) {
  if (!pred.u.same_shape(truth.u) || !pred.v.same_shape(truth.v)) throw ShapeError("l2_error: shape mismatch");
  const MacVelocity2 diff = pred - truth;
  double s = 0.0;
  for (double x : diff.u.data()) s += x * x;
  for (double x : diff.v.data()) s += x * x;
  const std::size_t n = diff.u.size() + diff.v.size();
  return n ? s / static_cast<double>(n) : 0.0;
}

double viscous_objective(const MacVelocity2& vel, const MacVelocity2& vel_old, const VolumeFractions2& vols,
                         const FluidParams& params, const GridDims& d) {
  require_shape(vel, d, "viscous_objective");
  require_shape(vel_old, d, "viscous_objective");
  require_shape(vols, d, "viscous_objective");
  params.validate(d);
  const double inv_dx = 1.0 / d.dx;

  double inertia = 0.0;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i) {
      const double du = vel.u(i, j) - vel_old.u(i, j);
      inertia += vols.u_face(i, j) * du * du;
    }
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      const double dv = vel.v(i, j) - vel_old.v(i, j);
      inertia += vols.v_face(i, j) * dv * dv;
    }

  double cells = 0.0;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      const double ux = (vel.u(i + 1, j) - vel.u(i, j)) * inv_dx;
      const double vy = (vel.v(i, j + 1) - vel.v(i, j)) * inv_dx;
      cells += params.mu(i, j) * vols.cell(i, j) * (ux * ux + vy * vy);
    }
  double nodes = 0.0;
  for (int j = 1; j < d.ny; ++j)
    for (int i = 1; i < d.nx; ++i) {
      const double shear = (vel.u(i, j) - vel.u(i, j - 1) + vel.v(i, j) - vel.v(i - 1, j)) * inv_dx;
      nodes += params.mu_node(i, j) * vols.node(i, j) * 0.5 * shear * shear;
    }
  return (params.rho * inertia + 2.0 * params.dt * (cells + nodes)) * d.dx * d.dx;
}

double weighted_kinetic_energy(const MacVelocity2& vel, const VolumeFractions2& vols, const FluidParams& params,
                               const GridDims& d) {
  require_shape(vel, d, "weighted_kinetic_energy");
  double e = 0.0;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i) e += vols.u_face(i, j) * vel.u(i, j) * vel.u(i, j);
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) e += vols.v_face(i, j) * vel.v(i, j) * vel.v(i, j);
  return 0.5 * params.rho * e * d.dx * d.dx;
}

Vec2 weighted_momentum(const MacVelocity2& vel, const VolumeFractions2& vols, const FluidParams& params,
                       const GridDims& d) {
  require_shape(vel, d, "weighted_momentum");
  Vec2 p;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i) p.x += vols.u_face(i, j) * vel.u(i, j);
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) p.y += vols.v_face(i, j) * vel.v(i, j);
  const double s = params.rho * d.dx * d.dx;
  return {p.x * s, p.y * s};
}

}  // namespace viscid
