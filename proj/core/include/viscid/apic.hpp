#pragma once

#include <cstdint>
#include <vector>

#include "viscid/grid.hpp"

namespace viscid {

/// Row-major 2x2 matrix. Row 0 is the affine gradient of u, row 1 of v.
struct Mat2 {
  double xx = 0.0, xy = 0.0;
  double yx = 0.0, yy = 0.0;
};

struct ParticleSet {
  std::vector<Vec2> position;
  std::vector<Vec2> velocity;
  std::vector<Mat2> affine;
  std::vector<std::uint8_t> color;
  double mass = 1.0;

  std::size_t size() const noexcept { return position.size(); }
  void push_back(Vec2 x, Vec2 v = {}, std::uint8_t tag = 0) {
    position.push_back(x);
    velocity.push_back(v);
    affine.push_back({});
    color.push_back(tag);
  }
};

/// Particle-to-grid result. Faces with zero mass received no particle
/// contribution and carry velocity 0.
struct GridTransfer {
  MacVelocity2 velocity;
  Field2 mass_u;
  Field2 mass_v;
};

/// APIC scatter with the quadratic B-spline kernel. Particles are visited in
/// storage order so the reduction is reproducible.
GridTransfer p2g(const ParticleSet& particles, const GridDims& dims);

/// APIC gather: particle velocity and affine matrix from the grid.
/// Positions, color and mass are carried over unchanged.
ParticleSet g2p(const MacVelocity2& grid, const ParticleSet& particles, const GridDims& dims);

/// Fills zero-mass faces layer by layer with the mean of already-known
/// same-family neighbors. Returns the number of faces filled.
std::size_t extrapolate_velocity(MacVelocity2& vel, const Field2& mass_u, const Field2& mass_v);

/// Lowest and highest admissible particle coordinate along each axis: one
/// cell inside the domain, which keeps every kernel stencil on the grid.
double particle_margin(const GridDims& dims);

/// Forward-Euler advection, then projection out of solids along the solid
/// distance gradient and clamping into the domain margin. Wall-normal
/// velocity is removed wherever a particle was pushed back.
ParticleSet advect(const ParticleSet& particles, double dt, const GridDims& dims, const SolidSdf2& solid);

}  // namespace viscid
