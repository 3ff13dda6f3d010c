#include "viscid/level_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace viscid {

double edge_occupancy(double d_plus, double d_minus) noexcept {
  if (d_plus <= 0.0 && d_minus <= 0.0) return 1.0;
  if (d_plus > 0.0 && d_minus > 0.0) return 0.0;
  const double wet = std::min(d_plus, d_minus);
  const double dry = std::max(d_plus, d_minus);
  return std::clamp(-wet / (dry - wet), 0.0, 1.0);
}

double rect_occupancy(double phi00, double phi10, double phi01, double phi11) noexcept {
  const double bottom = edge_occupancy(phi00, phi10);
  const double top = edge_occupancy(phi01, phi11);
  const double left = edge_occupancy(phi00, phi01);
  const double right = edge_occupancy(phi10, phi11);
  // Pairing opposite edges keeps the sum bitwise invariant under mirroring
  // and transposition.
  return 0.25 * ((bottom + top) + (left + right));
}

namespace {

// phi at doubled corner coordinates (a, b) = (2s, 2t), clamped to the domain.
// Odd coordinates are midpoints between lattice corners.
double corner_sample(const Field2& phi, int a, int b) {
  const int amax = 2 * (phi.ni() - 1);
  const int bmax = 2 * (phi.nj() - 1);
  a = std::clamp(a, 0, amax);
  b = std::clamp(b, 0, bmax);
  const int i = a / 2;
  const int j = b / 2;
  const bool oa = (a & 1) != 0;
  const bool ob = (b & 1) != 0;
  if (!oa && !ob) return phi(i, j);
  if (oa && !ob) return 0.5 * (phi(i, j) + phi(i + 1, j));
  if (!oa && ob) return 0.5 * (phi(i, j) + phi(i, j + 1));
  return 0.25 * ((phi(i, j) + phi(i + 1, j + 1)) + (phi(i + 1, j) + phi(i, j + 1)));
}

// Occupancy of the rectangle spanning doubled coordinates [a0, a1] x [b0, b1].
double dual_occupancy(const Field2& phi, int a0, int a1, int b0, int b1) {
  return rect_occupancy(corner_sample(phi, a0, b0), corner_sample(phi, a1, b0), corner_sample(phi, a0, b1),
                        corner_sample(phi, a1, b1));
}

}  // namespace

VolumeFractions2 fluid_volumes(const LevelSet2& ls, const GridDims& dims) {
  require_shape(ls, dims, "fluid_volumes");
  const Field2& phi = ls.phi;
  VolumeFractions2 v(dims);
  for (int j = 0; j < dims.ny; ++j)
    for (int i = 0; i < dims.nx; ++i) v.cell(i, j) = dual_occupancy(phi, 2 * i, 2 * i + 2, 2 * j, 2 * j + 2);
  for (int j = 0; j < dims.ny; ++j)
    for (int i = 0; i <= dims.nx; ++i) v.u_face(i, j) = dual_occupancy(phi, 2 * i - 1, 2 * i + 1, 2 * j, 2 * j + 2);
  for (int j = 0; j <= dims.ny; ++j)
    for (int i = 0; i < dims.nx; ++i) v.v_face(i, j) = dual_occupancy(phi, 2 * i, 2 * i + 2, 2 * j - 1, 2 * j + 1);
  for (int j = 0; j <= dims.ny; ++j)
    for (int i = 0; i <= dims.nx; ++i) v.node(i, j) = dual_occupancy(phi, 2 * i - 1, 2 * i + 1, 2 * j - 1, 2 * j + 1);
  return v;
}

Field2 solid_indicator(const SolidSdf2& solid) {
  Field2 out(solid.D.ni(), solid.D.nj());
  for (std::size_t k = 0; k < out.size(); ++k) out.data()[k] = solid.D.data()[k] <= 0.0 ? 1.0 : 0.0;
  return out;
}

LevelSet2 level_set_from_particles(std::span<const Vec2> positions, double radius, const GridDims& dims) {
  const double diag = std::hypot(dims.width(), dims.height());
  LevelSet2 ls(dims, diag);
  if (positions.empty()) return ls;

  // Bin particles by cell so each corner only visits nearby particles.
  const int nx = dims.nx;
  const int ny = dims.ny;
  std::vector<int> start(static_cast<std::size_t>(nx * ny) + 1, 0);
  auto cell_of = [&](Vec2 p) {
    const int ci = std::clamp(static_cast<int>(std::floor(p.x / dims.dx)), 0, nx - 1);
    const int cj = std::clamp(static_cast<int>(std::floor(p.y / dims.dx)), 0, ny - 1);
    return ci + nx * cj;
  };
  for (const Vec2& p : positions) ++start[static_cast<std::size_t>(cell_of(p)) + 1];
  for (std::size_t k = 1; k < start.size(); ++k) start[k] += start[k - 1];
  std::vector<int> order(positions.size());
  {
    std::vector<int> fill(start.begin(), start.end() - 1);
    for (std::size_t p = 0; p < positions.size(); ++p) order[static_cast<std::size_t>(fill[static_cast<std::size_t>(cell_of(positions[p]))]++)] = static_cast<int>(p);
  }

  const int reach = static_cast<int>(std::ceil(radius / dims.dx)) + 2;
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const Vec2 c = node_pos(dims, i, j);
      double best = std::numeric_limits<double>::infinity();
      for (int cj = std::max(0, j - reach); cj < std::min(ny, j + reach); ++cj) {
        for (int ci = std::max(0, i - reach); ci < std::min(nx, i + reach); ++ci) {
          const int cell = ci + nx * cj;
          for (int k = start[static_cast<std::size_t>(cell)]; k < start[static_cast<std::size_t>(cell) + 1]; ++k) {
            const Vec2 p = positions[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
            best = std::min(best, std::hypot(c.x - p.x, c.y - p.y));
          }
        }
      }
      if (std::isfinite(best)) ls.phi(i, j) = std::min(best - radius, diag);
    }
  }
  return ls;
}

namespace {

struct Bilinear {
  int i;
  int j;
  double s;
  double t;
};

Bilinear locate(const SolidSdf2& solid, const GridDims& dims, Vec2 x) {
  const double h = 0.5 * dims.dx;
  const double fs = x.x / h;
  const double ft = x.y / h;
  const int i = std::clamp(static_cast<int>(std::floor(fs)), 0, solid.D.ni() - 2);
  const int j = std::clamp(static_cast<int>(std::floor(ft)), 0, solid.D.nj() - 2);
  return {i, j, fs - i, ft - j};
}

}  // namespace

double sample_solid(const SolidSdf2& solid, const GridDims& dims, Vec2 x) {
  const Bilinear b = locate(solid, dims, x);
  const Field2& D = solid.D;
  const double lo = (1.0 - b.s) * D(b.i, b.j) + b.s * D(b.i + 1, b.j);
  const double hi = (1.0 - b.s) * D(b.i, b.j + 1) + b.s * D(b.i + 1, b.j + 1);
  return (1.0 - b.t) * lo + b.t * hi;
}

Vec2 solid_gradient(const SolidSdf2& solid, const GridDims& dims, Vec2 x) {
  const Bilinear b = locate(solid, dims, x);
  const Field2& D = solid.D;
  const double h = 0.5 * dims.dx;
  const double gx = ((1.0 - b.t) * (D(b.i + 1, b.j) - D(b.i, b.j)) + b.t * (D(b.i + 1, b.j + 1) - D(b.i, b.j + 1))) / h;
  const double gy = ((1.0 - b.s) * (D(b.i, b.j + 1) - D(b.i, b.j)) + b.s * (D(b.i + 1, b.j + 1) - D(b.i + 1, b.j))) / h;
  return {gx, gy};
}

void extend_into_solid(LevelSet2& ls, const SolidSdf2& solid, const GridDims& d) {
  require_shape(ls, d, "extend_into_solid");
  require_shape(solid, d, "extend_into_solid");
  Field2& phi = ls.phi;
  Array2<unsigned char> known(d.nx + 1, d.ny + 1, 0);
  for (int j = 0; j <= d.ny; ++j)
    for (int i = 0; i <= d.nx; ++i) known(i, j) = solid.at_node(i, j) > 0.0;

  for (int sweep = 0; sweep < 2; ++sweep) {
    Field2 next = phi;
    Array2<unsigned char> next_known = known;
    for (int j = 0; j <= d.ny; ++j)
      for (int i = 0; i <= d.nx; ++i) {
        if (known(i, j)) continue;
        double count = 0.0;
        auto get = [&](int a, int b) {
          if (!known.in_range(a, b) || !known(a, b)) return 0.0;
          count += 1.0;
          return phi(a, b);
        };
        // Mirror pairs are summed first so the result is reflection-exact.
        const double west_east = get(i - 1, j) + get(i + 1, j);
        const double north = get(i - 1, j + 1) + get(i + 1, j + 1);
        const double south = get(i - 1, j - 1) + get(i + 1, j - 1);
        const double vertical = get(i, j - 1) + get(i, j + 1);
        if (count == 0.0) continue;
        next(i, j) = ((west_east + vertical) + (north + south)) / count;
        next_known(i, j) = 1;
      }
    phi = std::move(next);
    known = std::move(next_known);
  }
}

}  // namespace viscid
