#include "viscid/grid.hpp"

#include <cmath>
#include <string>

namespace viscid {

GridDims::GridDims(int nx_, int ny_, double dx_) : nx(nx_), ny(ny_), dx(dx_) {
  if (nx < 2 || ny < 2) throw InvalidArgument("GridDims: need nx >= 2 and ny >= 2");
  if (!(dx > 0.0) || !std::isfinite(dx)) throw InvalidArgument("GridDims: dx must be positive and finite");
}

namespace {

void fail(const char* who, const char* what) { throw ShapeError(std::string(who) + ": " + what + " does not match grid"); }

}  // namespace

void require_shape(const MacVelocity2& vel, const GridDims& dims, const char* who) {
  if (!vel.matches(dims)) fail(who, "velocity");
}

void require_shape(const LevelSet2& ls, const GridDims& dims, const char* who) {
  if (ls.phi.ni() != dims.nx + 1 || ls.phi.nj() != dims.ny + 1) fail(who, "level set");
}

void require_shape(const SolidSdf2& solid, const GridDims& dims, const char* who) {
  if (!solid.matches(dims)) fail(who, "solid distance");
}

void require_shape(const VolumeFractions2& vols, const GridDims& dims, const char* who) {
  const bool ok = vols.cell.ni() == dims.nx && vols.cell.nj() == dims.ny && vols.u_face.ni() == dims.nx + 1 &&
                  vols.u_face.nj() == dims.ny && vols.v_face.ni() == dims.nx && vols.v_face.nj() == dims.ny + 1 &&
                  vols.node.ni() == dims.nx + 1 && vols.node.nj() == dims.ny + 1;
  if (!ok) fail(who, "volume fractions");
}

VelocityGradients2 velocity_gradients(const MacVelocity2& vel, const GridDims& dims) {
  require_shape(vel, dims, "velocity_gradients");
  const int nx = dims.nx;
  const int ny = dims.ny;
  const double inv_dx = 1.0 / dims.dx;

  VelocityGradients2 g{Field2(nx, ny), Field2(nx, ny), Field2(nx + 1, ny + 1), Field2(nx + 1, ny + 1)};
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      g.du_dx(i, j) = (vel.u(i + 1, j) - vel.u(i, j)) * inv_dx;
      g.dv_dy(i, j) = (vel.v(i, j + 1) - vel.v(i, j)) * inv_dx;
    }
  }

  // du/dy at node (i, j) straddles u(i, j-1) and u(i, j); clamp the pair at
  // the bottom and top rows.
  for (int j = 0; j <= ny; ++j) {
    const int j1 = std::clamp(j, 1, ny - 1);
    for (int i = 0; i <= nx; ++i) {
      g.du_dy(i, j) = (vel.u(i, j1) - vel.u(i, j1 - 1)) * inv_dx;
    }
  }
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const int i1 = std::clamp(i, 1, nx - 1);
      g.dv_dx(i, j) = (vel.v(i1, j) - vel.v(i1 - 1, j)) * inv_dx;
    }
  }
  return g;
}

namespace {

template <class Op>
Field2 zip(const Field2& a, const Field2& b, Op op) {
  if (!a.same_shape(b)) throw ShapeError("velocity arithmetic: shape mismatch");
  Field2 out(a.ni(), a.nj());
  for (std::size_t k = 0; k < a.size(); ++k) out.data()[k] = op(a.data()[k], b.data()[k]);
  return out;
}

}  // namespace

MacVelocity2 operator+(const MacVelocity2& a, const MacVelocity2& b) {
  MacVelocity2 out;
  out.u = zip(a.u, b.u, [](double x, double y) { return x + y; });
  out.v = zip(a.v, b.v, [](double x, double y) { return x + y; });
  return out;
}

MacVelocity2 operator-(const MacVelocity2& a, const MacVelocity2& b) {
  MacVelocity2 out;
  out.u = zip(a.u, b.u, [](double x, double y) { return x - y; });
  out.v = zip(a.v, b.v, [](double x, double y) { return x - y; });
  return out;
}

double max_abs(const MacVelocity2& v) {
  double m = 0.0;
  for (double x : v.u.data()) m = std::max(m, std::abs(x));
  for (double x : v.v.data()) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace viscid
