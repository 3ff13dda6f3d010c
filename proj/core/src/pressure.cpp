#include "viscid/pressure.hpp"

#include <cmath>
#include <vector>

#include "viscid/sparse.hpp"

namespace viscid {

CellLabels classify_cells(const LevelSet2& ls, const SolidSdf2& solid, const GridDims& dims, bool closed_border) {
  require_shape(ls, dims, "classify_cells");
  require_shape(solid, dims, "classify_cells");
  CellLabels out{Array2<CellLabel>(dims.nx, dims.ny, CellLabel::Air), closed_border};
  const Field2& phi = ls.phi;
  for (int j = 0; j < dims.ny; ++j)
    for (int i = 0; i < dims.nx; ++i) {
      if (solid.at_cell(i, j) <= 0.0) {
        out.label(i, j) = CellLabel::Solid;
        continue;
      }
      const double center = 0.25 * ((phi(i, j) + phi(i + 1, j + 1)) + (phi(i + 1, j) + phi(i, j + 1)));
      if (center < 0.0) out.label(i, j) = CellLabel::Fluid;
    }
  return out;
}

Field2 divergence(const MacVelocity2& vel, const GridDims& dims) {
  require_shape(vel, dims, "divergence");
  Field2 div(dims.nx, dims.ny);
  for (int j = 0; j < dims.ny; ++j)
    for (int i = 0; i < dims.nx; ++i)
      div(i, j) = ((vel.u(i + 1, j) - vel.u(i, j)) + (vel.v(i, j + 1) - vel.v(i, j))) / dims.dx;
  return div;
}

namespace {

bool is_solid(const CellLabels& l, int i, int j) { return l.label(i, j) == CellLabel::Solid; }

// A face is closed when a solid covers it, a SOLID cell borders it, or it
// lies on a walled domain border.
bool u_closed(const CellLabels& l, const SolidSdf2& s, const GridDims& d, int i, int j) {
  if (s.at_u_face(i, j) <= 0.0) return true;
  if (i == 0 || i == d.nx) return l.closed_border || is_solid(l, i == 0 ? 0 : d.nx - 1, j);
  return is_solid(l, i - 1, j) || is_solid(l, i, j);
}

bool v_closed(const CellLabels& l, const SolidSdf2& s, const GridDims& d, int i, int j) {
  if (s.at_v_face(i, j) <= 0.0) return true;
  if (j == 0 || j == d.ny) return l.closed_border || is_solid(l, i, j == 0 ? 0 : d.ny - 1);
  return is_solid(l, i, j - 1) || is_solid(l, i, j);
}

}  // namespace

void enforce_solid_faces(MacVelocity2& vel, const CellLabels& labels, const SolidSdf2& solid, const GridDims& d) {
  require_shape(vel, d, "enforce_solid_faces");
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i)
      if (u_closed(labels, solid, d, i, j)) vel.u(i, j) = solid.velocity.x;
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i < d.nx; ++i)
      if (v_closed(labels, solid, d, i, j)) vel.v(i, j) = solid.velocity.y;
}

ProjectionResult project(const MacVelocity2& vel_in, const CellLabels& labels, const SolidSdf2& solid,
                         const FluidParams& params, const GridDims& d, double tol) {
  require_shape(vel_in, d, "project");
  require_shape(solid, d, "project");
  if (labels.label.ni() != d.nx || labels.label.nj() != d.ny) throw ShapeError("project: labels do not match grid");
  params.validate(d);

  ProjectionResult res{vel_in, 0, 0.0};
  MacVelocity2& vel = res.velocity;
  enforce_solid_faces(vel, labels, solid, d);

  std::vector<int> index(static_cast<std::size_t>(d.nx * d.ny), -1);
  int n = 0;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i)
      if (labels.label(i, j) == CellLabel::Fluid) index[static_cast<std::size_t>(i + d.nx * j)] = n++;
  if (n == 0) return res;

  auto cell_index = [&](int i, int j) { return index[static_cast<std::size_t>(i + d.nx * j)]; };

  // Unknown q = p dt / (rho dx): the face update is u -= q_right - q_left, and
  // sum_open (q_c - q_n) = -(flux out of the cell) zeroes the divergence.
  std::vector<SparseMatrix::Triplet> trip;
  std::vector<double> rhs(static_cast<std::size_t>(n), 0.0);
  trip.reserve(static_cast<std::size_t>(n) * 5);
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      const int r = cell_index(i, j);
      if (r < 0) continue;
      const double flux = (vel.u(i + 1, j) - vel.u(i, j)) + (vel.v(i, j + 1) - vel.v(i, j));
      rhs[static_cast<std::size_t>(r)] = -flux;
      double diag = 0.0;
      auto neighbor = [&](bool closed, int a, int b) {
        if (closed) return;
        diag += 1.0;
        if (a < 0 || a >= d.nx || b < 0 || b >= d.ny) return;  // air beyond an open border
        const int c = cell_index(a, b);
        if (c >= 0) trip.push_back({r, c, -1.0});
      };
      neighbor(u_closed(labels, solid, d, i, j), i - 1, j);
      neighbor(u_closed(labels, solid, d, i + 1, j), i + 1, j);
      neighbor(v_closed(labels, solid, d, i, j), i, j - 1);
      neighbor(v_closed(labels, solid, d, i, j + 1), i, j + 1);
      // A cell sealed on all sides has no pressure freedom; pin it.
      trip.push_back({r, r, diag > 0.0 ? diag : 1.0});
    }

  const SparseMatrix A = SparseMatrix::from_triplets(n, std::move(trip));
  const PcgResult sol = solve_pcg(A, rhs, tol, 10 * static_cast<std::size_t>(n) + 100);
  res.iterations = sol.iterations;
  res.relative_residual = sol.relative_residual;

  auto q = [&](int i, int j) -> double {
    if (i < 0 || i >= d.nx || j < 0 || j >= d.ny) return 0.0;
    const int c = cell_index(i, j);
    return c >= 0 ? sol.x[static_cast<std::size_t>(c)] : 0.0;
  };
  auto touches_fluid = [&](int a, int b, int c, int e) {
    const bool first = a >= 0 && a < d.nx && b >= 0 && b < d.ny && cell_index(a, b) >= 0;
    const bool second = c >= 0 && c < d.nx && e >= 0 && e < d.ny && cell_index(c, e) >= 0;
    return first || second;
  };
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i)
      if (!u_closed(labels, solid, d, i, j) && touches_fluid(i - 1, j, i, j)) vel.u(i, j) -= q(i, j) - q(i - 1, j);
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i < d.nx; ++i)
      if (!v_closed(labels, solid, d, i, j) && touches_fluid(i, j - 1, i, j)) vel.v(i, j) -= q(i, j) - q(i, j - 1);
  return res;
}

}  // namespace viscid
