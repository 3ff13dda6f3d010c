#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <vector>

#include "viscid/error.hpp"

namespace viscid {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Dense 2D array indexed (i, j) with i fastest.
template <class T>
class Array2 {
 public:
  Array2() = default;
  Array2(int ni, int nj, T value = T{})
      : ni_(ni), nj_(nj), data_(static_cast<std::size_t>(ni) * static_cast<std::size_t>(nj), value) {
    if (ni < 0 || nj < 0) throw ShapeError("Array2: negative extent");
  }

  int ni() const noexcept { return ni_; }
  int nj() const noexcept { return nj_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(int i, int j) {
    assert(i >= 0 && i < ni_ && j >= 0 && j < nj_);
    return data_[static_cast<std::size_t>(i) + static_cast<std::size_t>(ni_) * static_cast<std::size_t>(j)];
  }
  const T& operator()(int i, int j) const {
    assert(i >= 0 && i < ni_ && j >= 0 && j < nj_);
    return data_[static_cast<std::size_t>(i) + static_cast<std::size_t>(ni_) * static_cast<std::size_t>(j)];
  }

  bool in_range(int i, int j) const noexcept { return i >= 0 && i < ni_ && j >= 0 && j < nj_; }
  bool same_shape(const Array2& o) const noexcept { return ni_ == o.ni_ && nj_ == o.nj_; }

  void fill(T value) { std::fill(data_.begin(), data_.end(), value); }

  std::vector<T>& data() noexcept { return data_; }
  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const Array2&, const Array2&) = default;

 private:
  int ni_ = 0;
  int nj_ = 0;
  std::vector<T> data_;
};

using Field2 = Array2<double>;

/// Uniform square-cell grid. Cell (i, j) spans [i*dx, (i+1)*dx] x [j*dx, (j+1)*dx].
struct GridDims {
  int nx = 0;
  int ny = 0;
  double dx = 0.0;

  GridDims() = default;
  GridDims(int nx_, int ny_, double dx_);

  double width() const noexcept { return nx * dx; }
  double height() const noexcept { return ny * dx; }

  /// Extent of the symmetric grid along x / y: 2n + 1.
  int sym_nx() const noexcept { return 2 * nx + 1; }
  int sym_ny() const noexcept { return 2 * ny + 1; }

  std::size_t face_count() const noexcept {
    return static_cast<std::size_t>(nx + 1) * ny + static_cast<std::size_t>(nx) * (ny + 1);
  }

  friend bool operator==(const GridDims&, const GridDims&) = default;
};

/// Staggered velocity: u on x-faces (nx+1, ny), v on y-faces (nx, ny+1).
struct MacVelocity2 {
  Field2 u;
  Field2 v;

  MacVelocity2() = default;
  explicit MacVelocity2(const GridDims& d, double u0 = 0.0, double v0 = 0.0)
      : u(d.nx + 1, d.ny, u0), v(d.nx, d.ny + 1, v0) {}

  bool matches(const GridDims& d) const noexcept {
    return u.ni() == d.nx + 1 && u.nj() == d.ny && v.ni() == d.nx && v.nj() == d.ny + 1;
  }

  friend bool operator==(const MacVelocity2&, const MacVelocity2&) = default;
};

/// Signed distance to the liquid surface at cell corners, negative inside liquid.
struct LevelSet2 {
  Field2 phi;  // (nx+1, ny+1)

  LevelSet2() = default;
  explicit LevelSet2(const GridDims& d, double value = 0.0) : phi(d.nx + 1, d.ny + 1, value) {}
};

/// Signed distance to solids at every symmetric-grid position, D <= 0 inside solid.
/// `velocity` is the rigid velocity imposed on faces covered by the solid.
struct SolidSdf2 {
  Field2 D;  // (2nx+1, 2ny+1)
  Vec2 velocity{};

  SolidSdf2() = default;
  explicit SolidSdf2(const GridDims& d, double value = 1.0) : D(d.sym_nx(), d.sym_ny(), value) {}

  bool matches(const GridDims& d) const noexcept { return D.ni() == d.sym_nx() && D.nj() == d.sym_ny(); }

  /// D at the u-face / v-face / cell-center / node with the given MAC index.
  double at_u_face(int i, int j) const { return D(2 * i, 2 * j + 1); }
  double at_v_face(int i, int j) const { return D(2 * i + 1, 2 * j); }
  double at_cell(int i, int j) const { return D(2 * i + 1, 2 * j + 1); }
  double at_node(int i, int j) const { return D(2 * i, 2 * j); }
};

/// Liquid occupancy in [0, 1] of cells, both face families and nodes.
struct VolumeFractions2 {
  Field2 cell;    // (nx, ny)
  Field2 u_face;  // (nx+1, ny)
  Field2 v_face;  // (nx, ny+1)
  Field2 node;    // (nx+1, ny+1)

  VolumeFractions2() = default;
  explicit VolumeFractions2(const GridDims& d, double value = 0.0)
      : cell(d.nx, d.ny, value),
        u_face(d.nx + 1, d.ny, value),
        v_face(d.nx, d.ny + 1, value),
        node(d.nx + 1, d.ny + 1, value) {}
};

/// Finite-difference velocity gradients. Normal derivatives live at cell
/// centers, cross derivatives at nodes.
struct VelocityGradients2 {
  Field2 du_dx;  // (nx, ny)
  Field2 dv_dy;  // (nx, ny)
  Field2 du_dy;  // (nx+1, ny+1)
  Field2 dv_dx;  // (nx+1, ny+1)
};

void require_shape(const MacVelocity2& vel, const GridDims& dims, const char* who);
void require_shape(const LevelSet2& ls, const GridDims& dims, const char* who);
void require_shape(const SolidSdf2& solid, const GridDims& dims, const char* who);
void require_shape(const VolumeFractions2& vols, const GridDims& dims, const char* who);

/// Physical positions of staggered samples.
inline Vec2 u_face_pos(const GridDims& d, int i, int j) { return {i * d.dx, (j + 0.5) * d.dx}; }
inline Vec2 v_face_pos(const GridDims& d, int i, int j) { return {(i + 0.5) * d.dx, j * d.dx}; }
inline Vec2 cell_pos(const GridDims& d, int i, int j) { return {(i + 0.5) * d.dx, (j + 0.5) * d.dx}; }
inline Vec2 node_pos(const GridDims& d, int i, int j) { return {i * d.dx, j * d.dx}; }

/// Central differences of adjacent staggered samples; boundary nodes fall
/// back to one-sided differences so every output has a fixed shape.
VelocityGradients2 velocity_gradients(const MacVelocity2& vel, const GridDims& dims);

MacVelocity2 operator+(const MacVelocity2& a, const MacVelocity2& b);
MacVelocity2 operator-(const MacVelocity2& a, const MacVelocity2& b);
double max_abs(const MacVelocity2& v);

}  // namespace viscid
