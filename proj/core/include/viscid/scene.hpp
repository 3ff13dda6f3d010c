#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "viscid/apic.hpp"
#include "viscid/fluid_params.hpp"
#include "viscid/grid.hpp"

namespace viscid {

/// Axis-aligned box or disc in physical coordinates.
struct Shape {
  enum class Kind { Box, Disc };

  Kind kind = Kind::Box;
  Vec2 lo{};           // box: lower corner; disc: center
  Vec2 hi{};           // box: upper corner
  double radius = 0.0;  // disc only
  std::uint8_t color = 0;

  static Shape box(Vec2 lo, Vec2 hi, std::uint8_t color = 0);
  static Shape disc(Vec2 center, double radius, std::uint8_t color = 0);

  /// Signed distance, negative inside.
  double distance(Vec2 x) const;
  bool contains(Vec2 x) const { return distance(x) < 0.0; }
  bool inside_domain(Vec2 domain) const;
};

struct ViscosityRegion {
  Shape shape;
  double mu = 0.0;
};

/// Declarative simulation setup.
struct Scene {
  std::string name = "scene";
  Vec2 domain{2.0, 2.0};  // m
  GridDims dims{50, 50, 0.04};
  double dt = 1.0 / 300.0;
  Vec2 gravity{0.0, -9.8};
  double rho = 1000.0;
  double mu = 0.0;  // default viscosity
  std::vector<ViscosityRegion> mu_regions;
  std::vector<Shape> fluids;
  std::vector<Shape> solids;
  Vec2 solid_velocity{};
  bool walls = true;  // closed domain border
  std::uint64_t seed = 0;
  double jitter = 0.0;  // fraction of the half-cell seeding spacing, in [0, 1)

  void validate() const;
};

/// Parses the JSON scene format. Unknown keys are rejected.
Scene parse_scene(const std::string& json_text);
Scene load_scene(const std::string& path);
std::string scene_to_json(const Scene& scene);

/// Per-cell viscosity: regions override the default in listing order,
/// sampled at cell centers.
FluidParams make_params(const Scene& scene);

/// Solid distance at every symmetric-grid position: the union of the solid
/// shapes and, with walls on, the domain border.
SolidSdf2 build_solid(const Scene& scene);

/// Four particles per cell on a half-cell lattice inside the fluid shapes,
/// outside solids and within the particle margin. Jitter is derived from a
/// hash of (seed, lattice index) and is mirror-symmetric about the domain's
/// vertical center line, so x-symmetric scenes seed x-symmetric particles.
ParticleSet seed_particles(const Scene& scene);

}  // namespace viscid
