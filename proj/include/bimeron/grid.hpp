#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bimeron {

/// Uniform node-centered square grid over [-R, R]^2.
/// Node (i, j) sits at (x_j, y_i) with x_j = -R + j*h, y_i = -R + i*h,
/// h = 2R/(n-1). Odd n puts a node at the origin.
struct GridSpec {
  double half_width = 1.0;  // R > 0
  int points_per_side = 3;  // n >= 3

  double spacing() const { return 2.0 * half_width / (points_per_side - 1); }
  double coord(int k) const { return -half_width + k * spacing(); }
  std::complex<double> node(int i, int j) const { return {coord(j), coord(i)}; }
  std::size_t node_count() const {
    return static_cast<std::size_t>(points_per_side) * points_per_side;
  }

  void validate() const {
    if (!(half_width > 0.0))
      throw std::invalid_argument("GridSpec: half_width must be positive");
    if (points_per_side < 3)
      throw std::invalid_argument("GridSpec: need at least 3 points per side");
  }

  bool operator==(const GridSpec&) const = default;
};

/// Unit vector on S^2. Constructors normalize; a zero vector is rejected.
struct Director {
  double x = 0.0, y = 0.0, z = 1.0;

  static Director normalized(double x, double y, double z) {
    const double n2 = x * x + y * y + z * z;
    if (n2 <= 0.0 || !std::isfinite(n2))
      throw std::invalid_argument("Director: cannot normalize zero or non-finite vector");
    const double inv = 1.0 / std::sqrt(n2);
    return Director{x * inv, y * inv, z * inv};
  }

  double dot(const Director& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  Director operator-() const { return {-x, -y, -z}; }
};

inline constexpr double kUnitNormTol = 1e-12;

/// S^2-valued map sampled on a grid. Components are stored as separate
/// planes (row-major, index i*n + j) so stencil sweeps stay contiguous.
class Field {
 public:
  Field() = default;
  explicit Field(const GridSpec& g) : grid_(g) {
    g.validate();
    for (auto& c : comp_) c.assign(g.node_count(), 0.0);
    for (auto& v : comp_[2]) v = 1.0;
  }

  const GridSpec& grid() const { return grid_; }
  int n() const { return grid_.points_per_side; }

  Director at(int i, int j) const {
    const std::size_t k = idx(i, j);
    return {comp_[0][k], comp_[1][k], comp_[2][k]};
  }
  void set(int i, int j, const Director& d) {
    const std::size_t k = idx(i, j);
    comp_[0][k] = d.x;
    comp_[1][k] = d.y;
    comp_[2][k] = d.z;
  }

  const std::vector<double>& component(int c) const { return comp_[c]; }
  std::vector<double>& component(int c) { return comp_[c]; }

  /// Rescale every node to unit length (rounding correction only).
  void renormalize();

  /// Largest deviation of |m| from 1 over all nodes.
  double max_unit_defect() const;

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * grid_.points_per_side + j;
  }

  GridSpec grid_;
  std::array<std::vector<double>, 3> comp_;
};

/// Nodal 3-vector data that need not be unit length (gradients, defects).
struct VectorField {
  GridSpec grid;
  std::array<std::vector<double>, 3> comp;

  explicit VectorField(const GridSpec& g) : grid(g) {
    for (auto& c : comp) c.assign(g.node_count(), 0.0);
  }
};

// Binary field file ("BMF1") and CSV export; see field_io.cpp for the layout.
void write_field(const std::string& path, const Field& f);
Field read_field(const std::string& path);
void write_field_csv(const std::string& path, const Field& f);

}  // namespace bimeron
