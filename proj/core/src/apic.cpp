#include "viscid/apic.hpp"

#include <array>
#include <cmath>

#include "viscid/level_set.hpp"

namespace viscid {

namespace {

struct Stencil1D {
  int base;
  std::array<double, 3> w;
};

// Quadratic B-spline weights for a lattice whose k-th sample sits at
// (k + offset) * dx.
Stencil1D stencil(double x, double dx, double offset) {
  const double g = x / dx - offset;
  const int base = static_cast<int>(std::floor(g - 0.5));
  const double f = g - base;
  return {base, {0.5 * (1.5 - f) * (1.5 - f), 0.75 - (f - 1.0) * (f - 1.0), 0.5 * (f - 0.5) * (f - 0.5)}};
}

// Visits the 3x3 support of a particle on one face family.
template <class Fn>
void for_support(const Field2& family, Vec2 x, const GridDims& dims, double ox, double oy, Fn&& fn) {
  const Stencil1D sx = stencil(x.x, dims.dx, ox);
  const Stencil1D sy = stencil(x.y, dims.dx, oy);
  for (int b = 0; b < 3; ++b) {
    const int j = sy.base + b;
    for (int a = 0; a < 3; ++a) {
      const int i = sx.base + a;
      const double w = sx.w[static_cast<std::size_t>(a)] * sy.w[static_cast<std::size_t>(b)];
      if (w == 0.0 || !family.in_range(i, j)) continue;
      const Vec2 xf{(i + ox) * dims.dx, (j + oy) * dims.dx};
      fn(i, j, w, Vec2{xf.x - x.x, xf.y - x.y});
    }
  }
}

}  // namespace

GridTransfer p2g(const ParticleSet& particles, const GridDims& dims) {
  GridTransfer out{MacVelocity2(dims), Field2(dims.nx + 1, dims.ny), Field2(dims.nx, dims.ny + 1)};
  Field2& mu = out.mass_u;
  Field2& mv = out.mass_v;
  Field2& pu = out.velocity.u;
  Field2& pv = out.velocity.v;
  const double m = particles.mass;

  for (std::size_t p = 0; p < particles.size(); ++p) {
    const Vec2 x = particles.position[p];
    const Vec2 v = particles.velocity[p];
    const Mat2 C = particles.affine[p];
    for_support(pu, x, dims, 0.0, 0.5, [&](int i, int j, double w, Vec2 r) {
      mu(i, j) += w * m;
      pu(i, j) += w * m * (v.x + C.xx * r.x + C.xy * r.y);
    });
    for_support(pv, x, dims, 0.5, 0.0, [&](int i, int j, double w, Vec2 r) {
      mv(i, j) += w * m;
      pv(i, j) += w * m * (v.y + C.yx * r.x + C.yy * r.y);
    });
  }
  for (std::size_t k = 0; k < pu.size(); ++k)
    if (mu.data()[k] > 0.0) pu.data()[k] /= mu.data()[k];
  for (std::size_t k = 0; k < pv.size(); ++k)
    if (mv.data()[k] > 0.0) pv.data()[k] /= mv.data()[k];
  return out;
}

ParticleSet g2p(const MacVelocity2& grid, const ParticleSet& particles, const GridDims& dims) {
  require_shape(grid, dims, "g2p");
  ParticleSet out = particles;
  const double scale = 4.0 / (dims.dx * dims.dx);
  for (std::size_t p = 0; p < particles.size(); ++p) {
    const Vec2 x = particles.position[p];
    Vec2 v{};
    Mat2 C{};
    for_support(grid.u, x, dims, 0.0, 0.5, [&](int i, int j, double w, Vec2 r) {
      const double q = w * grid.u(i, j);
      v.x += q;
      C.xx += q * r.x;
      C.xy += q * r.y;
    });
    for_support(grid.v, x, dims, 0.5, 0.0, [&](int i, int j, double w, Vec2 r) {
      const double q = w * grid.v(i, j);
      v.y += q;
      C.yx += q * r.x;
      C.yy += q * r.y;
    });
    C.xx *= scale;
    C.xy *= scale;
    C.yx *= scale;
    C.yy *= scale;
    out.velocity[p] = v;
    out.affine[p] = C;
  }
  return out;
}

namespace {

std::size_t extrapolate_family(Field2& f, const Field2& mass) {
  Array2<char> known(f.ni(), f.nj(), 0);
  std::size_t missing = 0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    known.data()[k] = mass.data()[k] > 0.0 ? 1 : 0;
    if (!known.data()[k]) ++missing;
  }
  if (missing == f.size()) return 0;  // nothing to grow from

  std::size_t filled = 0;
  std::vector<std::pair<int, int>> layer;
  while (filled < missing) {
    layer.clear();
    for (int j = 0; j < f.nj(); ++j) {
      for (int i = 0; i < f.ni(); ++i) {
        if (known(i, j)) continue;
        // Mean written as first + sum(differences) / n so a uniform
        // neighborhood reproduces its value bit for bit.
        double first = 0.0;
        double acc = 0.0;
        int n = 0;
        const int di[4] = {-1, 1, 0, 0};
        const int dj[4] = {0, 0, -1, 1};
        for (int k = 0; k < 4; ++k) {
          const int a = i + di[k];
          const int b = j + dj[k];
          if (!known.in_range(a, b) || known(a, b) != 1) continue;
          if (n == 0) first = f(a, b);
          else acc += f(a, b) - first;
          ++n;
        }
        if (n > 0) {
          f(i, j) = first + acc / n;
          layer.emplace_back(i, j);
        }
      }
    }
    if (layer.empty()) break;
    for (auto [i, j] : layer) known(i, j) = 1;
    filled += layer.size();
  }
  return filled;
}

}  // namespace

std::size_t extrapolate_velocity(MacVelocity2& vel, const Field2& mass_u, const Field2& mass_v) {
  if (!vel.u.same_shape(mass_u) || !vel.v.same_shape(mass_v)) throw ShapeError("extrapolate_velocity: shape mismatch");
  return extrapolate_family(vel.u, mass_u) + extrapolate_family(vel.v, mass_v);
}

double particle_margin(const GridDims& dims) { return dims.dx; }

ParticleSet advect(const ParticleSet& particles, double dt, const GridDims& dims, const SolidSdf2& solid) {
  if (dt < 0.0) throw InvalidArgument("advect: dt must be non-negative");
  require_shape(solid, dims, "advect");
  ParticleSet out = particles;
  const double lo = particle_margin(dims);
  const double hi_x = dims.width() - lo;
  const double hi_y = dims.height() - lo;
  const double skin = 1e-6 * dims.dx;

  for (std::size_t p = 0; p < out.size(); ++p) {
    Vec2& x = out.position[p];
    Vec2& v = out.velocity[p];
    if (dt > 0.0) {
      x.x += dt * v.x;
      x.y += dt * v.y;
    }

    for (int iter = 0; iter < 4; ++iter) {
      const double d = sample_solid(solid, dims, x);
      if (d >= 0.0) break;
      Vec2 n = solid_gradient(solid, dims, x);
      const double len = std::hypot(n.x, n.y);
      if (len == 0.0) break;
      n.x /= len;
      n.y /= len;
      const double push = (skin - d) / len;
      x.x += push * n.x;
      x.y += push * n.y;
      const double vn = v.x * n.x + v.y * n.y;
      if (vn < 0.0) {
        v.x -= vn * n.x;
        v.y -= vn * n.y;
      }
    }

    if (x.x < lo) {
      x.x = lo;
      v.x = std::max(v.x, 0.0);
    } else if (x.x > hi_x) {
      x.x = hi_x;
      v.x = std::min(v.x, 0.0);
    }
    if (x.y < lo) {
      x.y = lo;
      v.y = std::max(v.y, 0.0);
    } else if (x.y > hi_y) {
      x.y = hi_y;
      v.y = std::min(v.y, 0.0);
    }
  }
  return out;
}

}  // namespace viscid
