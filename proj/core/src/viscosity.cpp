#include "viscid/viscosity.hpp"

#include <array>
#include <cmath>
#include <string>

namespace viscid {

std::vector<double> flatten(const MacVelocity2& vel) {
  std::vector<double> x;
  x.reserve(vel.u.size() + vel.v.size());
  x.insert(x.end(), vel.u.data().begin(), vel.u.data().end());
  x.insert(x.end(), vel.v.data().begin(), vel.v.data().end());
  return x;
}

MacVelocity2 unflatten(const std::vector<double>& x, const GridDims& dims) {
  MacVelocity2 vel(dims);
  if (x.size() != vel.u.size() + vel.v.size()) throw ShapeError("unflatten: size mismatch");
  std::copy(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(vel.u.size()), vel.u.data().begin());
  std::copy(x.begin() + static_cast<std::ptrdiff_t>(vel.u.size()), x.end(), vel.v.data().begin());
  return vel;
}

namespace {

bool interior_node(const GridDims& d, int i, int j) { return i >= 1 && i <= d.nx - 1 && j >= 1 && j <= d.ny - 1; }

double cell_weight(const VolumeFractions2& vols, const FluidParams& params, int i, int j) {
  return params.mu(i, j) * vols.cell(i, j);
}

double node_weight(const VolumeFractions2& vols, const FluidParams& params, const GridDims& d, int i, int j) {
  if (!interior_node(d, i, j)) return 0.0;
  return params.mu_node(i, j) * vols.node(i, j);
}

// One quadratic term  weight * (sum_k coeff_k x_{dof_k} - target)^2.
struct Term {
  double weight;
  int count;
  std::array<int, 4> dof;
  std::array<double, 4> coeff;
  double target;
};

template <class Fn>
void for_each_term(const MacVelocity2& vel_old, const VolumeFractions2& vols, const FluidParams& params,
                   const ViscousSystem& s, Fn&& fn) {
  const GridDims& d = s.dims;
  const double inv_dx = 1.0 / d.dx;

  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i) {
      const double w = params.rho * vols.u_face(i, j);
      if (w > 0.0) fn(Term{w, 1, {s.u_index(i, j)}, {1.0}, vel_old.u(i, j)});
    }
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      const double w = params.rho * vols.v_face(i, j);
      if (w > 0.0) fn(Term{w, 1, {s.v_index(i, j)}, {1.0}, vel_old.v(i, j)});
    }

  // Normal strain rates at cell centers.
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      const double w = 2.0 * params.dt * cell_weight(vols, params, i, j);
      if (!(w > 0.0)) continue;
      fn(Term{w, 2, {s.u_index(i + 1, j), s.u_index(i, j)}, {inv_dx, -inv_dx}, 0.0});
      fn(Term{w, 2, {s.v_index(i, j + 1), s.v_index(i, j)}, {inv_dx, -inv_dx}, 0.0});
    }

  // Shear strain rate at interior nodes: 2 eps_xy^2 = (du/dy + dv/dx)^2 / 2.
  for (int j = 1; j < d.ny; ++j)
    for (int i = 1; i < d.nx; ++i) {
      const double w = params.dt * node_weight(vols, params, d, i, j);
      if (!(w > 0.0)) continue;
      fn(Term{w,
              4,
              {s.u_index(i, j), s.u_index(i, j - 1), s.v_index(i, j), s.v_index(i - 1, j)},
              {inv_dx, -inv_dx, inv_dx, -inv_dx},
              0.0});
    }
}

}  // namespace

std::vector<FaceRole> classify_faces(const VolumeFractions2& vols, const SolidSdf2& solid, const FluidParams& params,
                                     const GridDims& d) {
  ViscousSystem idx;
  idx.dims = d;
  std::vector<FaceRole> role(d.face_count(), FaceRole::Inactive);

  // A face is active when it carries liquid mass or any adjacent stress term.
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i) {
      bool active = vols.u_face(i, j) > 0.0;
      if (i > 0) active = active || cell_weight(vols, params, i - 1, j) > 0.0;
      if (i < d.nx) active = active || cell_weight(vols, params, i, j) > 0.0;
      active = active || node_weight(vols, params, d, i, j) > 0.0 || node_weight(vols, params, d, i, j + 1) > 0.0;
      if (active) role[static_cast<std::size_t>(idx.u_index(i, j))] = FaceRole::Free;
    }
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      bool active = vols.v_face(i, j) > 0.0;
      if (j > 0) active = active || cell_weight(vols, params, i, j - 1) > 0.0;
      if (j < d.ny) active = active || cell_weight(vols, params, i, j) > 0.0;
      active = active || node_weight(vols, params, d, i, j) > 0.0 || node_weight(vols, params, d, i + 1, j) > 0.0;
      if (active) role[static_cast<std::size_t>(idx.v_index(i, j))] = FaceRole::Free;
    }

  // Solid faces override: the no-slip condition holds whether or not liquid is near.
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i)
      if (solid.at_u_face(i, j) <= 0.0) role[static_cast<std::size_t>(idx.u_index(i, j))] = FaceRole::Solid;
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i < d.nx; ++i)
      if (solid.at_v_face(i, j) <= 0.0) role[static_cast<std::size_t>(idx.v_index(i, j))] = FaceRole::Solid;
  return role;
}

ViscousSystem assemble_viscosity(const MacVelocity2& vel_old, const VolumeFractions2& vols, const SolidSdf2& solid,
                                 const FluidParams& params, const GridDims& dims) {
  require_shape(vel_old, dims, "assemble_viscosity");
  require_shape(vols, dims, "assemble_viscosity");
  require_shape(solid, dims, "assemble_viscosity");
  params.validate(dims);

  ViscousSystem s;
  s.dims = dims;
  const int n = static_cast<int>(dims.face_count());
  s.role = classify_faces(vols, solid, params, dims);
  s.fixed_value = flatten(vel_old);
  const int nu = (dims.nx + 1) * dims.ny;
  for (int r = 0; r < n; ++r)
    if (s.role[static_cast<std::size_t>(r)] == FaceRole::Solid)
      s.fixed_value[static_cast<std::size_t>(r)] = r < nu ? solid.velocity.x : solid.velocity.y;

  s.b.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<SparseMatrix::Triplet> trip;
  trip.reserve(static_cast<std::size_t>(n) * 9);
  auto is_free = [&](int r) { return s.role[static_cast<std::size_t>(r)] == FaceRole::Free; };

  for_each_term(vel_old, vols, params, s, [&](const Term& t) {
    double target = t.target;
    for (int k = 0; k < t.count; ++k)
      if (!is_free(t.dof[static_cast<std::size_t>(k)]))
        target -= t.coeff[static_cast<std::size_t>(k)] * s.fixed_value[static_cast<std::size_t>(t.dof[static_cast<std::size_t>(k)])];
    for (int a = 0; a < t.count; ++a) {
      const int ra = t.dof[static_cast<std::size_t>(a)];
      if (!is_free(ra)) continue;
      const double wa = t.weight * t.coeff[static_cast<std::size_t>(a)];
      s.b[static_cast<std::size_t>(ra)] += wa * target;
      for (int c = 0; c < t.count; ++c) {
        const int rc = t.dof[static_cast<std::size_t>(c)];
        if (is_free(rc)) trip.push_back({ra, rc, wa * t.coeff[static_cast<std::size_t>(c)]});
      }
    }
  });

  for (int r = 0; r < n; ++r)
    if (!is_free(r)) {
      trip.push_back({r, r, 1.0});
      s.b[static_cast<std::size_t>(r)] = s.fixed_value[static_cast<std::size_t>(r)];
    }

  s.A = SparseMatrix::from_triplets(n, std::move(trip));

  // A free face whose terms all vanished (possible only with zero weights
  // that slipped past classification) would leave an empty row.
  const std::vector<double> diag = s.A.diagonal();
  for (int r = 0; r < n; ++r)
    if (!(diag[static_cast<std::size_t>(r)] > 0.0))
      throw Error("assemble_viscosity: free face " + std::to_string(r) + " has no diagonal entry");

  const double asym = s.A.asymmetry();
  if (asym > 1e-9 * s.A.max_abs())
    throw Error("assemble_viscosity: assembled matrix is not symmetric (max |A - A^T| = " + std::to_string(asym) + ")");
  return s;
}

LinearSolve solve_viscosity(const ViscousSystem& system, const SolveOptions& options, const std::vector<double>& guess) {
  const std::size_t max_iter = options.max_iter ? options.max_iter : 10 * static_cast<std::size_t>(system.size());
  PcgResult r = solve_pcg(system.A, system.b, options.tol, max_iter, guess);
  return {std::move(r.x), r.iterations, r.relative_residual};
}

ViscosityResult viscosity_step(const MacVelocity2& vel_old, const VolumeFractions2& vols, const SolidSdf2& solid,
                               const FluidParams& params, const GridDims& dims, const SolveOptions& options) {
  const ViscousSystem sys = assemble_viscosity(vel_old, vols, solid, params, dims);
  std::vector<double> guess = flatten(vel_old);
  for (std::size_t r = 0; r < guess.size(); ++r)
    if (sys.role[r] != FaceRole::Free) guess[r] = sys.fixed_value[r];
  LinearSolve sol = solve_viscosity(sys, options, guess);

  // Fixed rows are exact by construction; copy them so the iterate's
  // residual noise never leaks into Solid or Inactive faces.
  for (std::size_t r = 0; r < sol.x.size(); ++r)
    if (sys.role[r] != FaceRole::Free) sol.x[r] = sys.fixed_value[r];

  ViscosityResult out;
  out.velocity = unflatten(sol.x, dims);
  out.delta = out.velocity - vel_old;
  out.iterations = sol.iterations;
  out.relative_residual = sol.relative_residual;
  return out;
}

}  // namespace viscid
