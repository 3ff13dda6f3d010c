#pragma once

#include <span>

#include "viscid/grid.hpp"

namespace viscid {

/// Liquid fraction of an edge whose endpoints carry signed distances
/// `d_plus` and `d_minus` (negative = liquid). Either argument order works.
double edge_occupancy(double d_plus, double d_minus) noexcept;

/// Liquid fraction of an axis-aligned rectangle from its four corner
/// distances: the mean of its four edge occupancies.
double rect_occupancy(double phi00, double phi10, double phi01, double phi11) noexcept;

/// Cell, face and node liquid fractions. Faces and nodes use the same
/// edge-average rule on the dual cell centered at the sample; corner
/// distances off the corner lattice are bilinearly interpolated, with
/// coordinates clamped to the domain.
VolumeFractions2 fluid_volumes(const LevelSet2& phi, const GridDims& dims);

/// 1 where D <= 0 (inside or on a solid), 0 elsewhere; shape (2nx+1, 2ny+1).
Field2 solid_indicator(const SolidSdf2& solid);

/// Union-of-discs level set sampled at cell corners. Every particle
/// contributes a disc of `radius`; values are capped at the domain diagonal.
LevelSet2 level_set_from_particles(std::span<const Vec2> positions, double radius, const GridDims& dims);

/// Replaces phi at corners covered by a solid (D <= 0) with the mean of
/// their uncovered 8-neighbors, so liquid resting against a wall reaches it.
/// Corners with no uncovered neighbor are filled from already-extended ones
/// on a second sweep; anything left keeps its value.
void extend_into_solid(LevelSet2& phi, const SolidSdf2& solid, const GridDims& dims);

/// Default particle radius for level-set construction: 1.01x the seeding
/// spacing of a 2x2-per-cell layout.
inline double default_particle_radius(const GridDims& dims) { return 1.01 * 0.5 * dims.dx; }

/// Bilinear interpolation of the solid distance at a physical point.
/// Outside the domain the field is linearly extrapolated from the border.
double sample_solid(const SolidSdf2& solid, const GridDims& dims, Vec2 x);

/// Gradient of the bilinear solid-distance interpolant.
Vec2 solid_gradient(const SolidSdf2& solid, const GridDims& dims, Vec2 x);

}  // namespace viscid
