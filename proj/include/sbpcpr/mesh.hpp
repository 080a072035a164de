#ifndef SBPCPR_MESH_HPP
#define SBPCPR_MESH_HPP

#include <stdexcept>

#include "sbpcpr/operators.hpp"

namespace sbpcpr {

/// Per-element reference-to-physical mapping.
enum class MappingKind { Linear, Quadratic };

/// Element-width pattern used to partition the domain.
enum class GridKind { Uniform, Alternating, GeometricIncreasing };

inline const char* mapping_name(MappingKind m) {
  return m == MappingKind::Linear ? "linear" : "quadratic";
}

inline const char* grid_name(GridKind g) {
  switch (g) {
    case GridKind::Uniform:             return "uniform";
    case GridKind::Alternating:         return "alternating";
    case GridKind::GeometricIncreasing: return "geometric";
  }
  return "unknown";
}

struct MappedPoint {
  double x;
  double dxdxi;
};

/// Maps a reference coordinate xi in [-1, 1] into [xmin, xmax].
///
/// Linear:    x = (xmax + xmin)/2 + xi (xmax - xmin)/2
/// Quadratic: x = (xmax - xmin)/8 (xi + 2)^2 + xmin - (xmax - xmin)/8,
/// whose derivative (xmax - xmin)/4 (xi + 2) stays positive on [-1, 1].
inline MappedPoint map_element(MappingKind mapping, double xmin, double xmax, double xi) {
  if (!(xmax > xmin)) throw std::invalid_argument("map_element: xmax must exceed xmin");
  const double dx = xmax - xmin;
  if (mapping == MappingKind::Linear) {
    return {0.5 * (xmax + xmin) + 0.5 * xi * dx, 0.5 * dx};
  }
  const double s = xi + 2.0;
  return {dx / 8.0 * s * s + xmin - dx / 8.0, dx / 4.0 * s};
}

/// Ordered element boundaries plus the per-element mapping descriptor.
struct Mesh1D {
  Vector boundaries;  // K + 1 ascending entries
  MappingKind mapping = MappingKind::Linear;
  GridKind grid = GridKind::Uniform;

  int num_elements() const { return static_cast<int>(boundaries.size()) - 1; }
  double xmin(int k) const { return boundaries[k]; }
  double xmax(int k) const { return boundaries[k + 1]; }
  double width(int k) const { return boundaries[k + 1] - boundaries[k]; }

  MappedPoint map(int k, double xi) const {
    return map_element(mapping, xmin(k), xmax(k), xi);
  }
};

/// Partitions [xmin, xmax] into K elements following the grid pattern:
/// uniform widths, alternating widths (each even-numbered element a tenth of
/// its predecessor, each later odd-numbered one ten times), or geometrically
/// increasing widths with ratio 3/2. The widths are anchored so the
/// boundaries span the domain exactly.
inline Mesh1D make_grid(GridKind grid, double xmin, double xmax, int elements,
                        MappingKind mapping = MappingKind::Linear) {
  if (elements < 1) throw std::invalid_argument("make_grid: need at least one element");
  if (!(xmax > xmin)) throw std::invalid_argument("make_grid: xmax must exceed xmin");
  Vector widths(elements);
  widths[0] = 1.0;
  for (int i = 1; i < elements; ++i) {
    switch (grid) {
      case GridKind::Uniform:             widths[i] = widths[i - 1]; break;
      case GridKind::Alternating:         widths[i] = widths[i - 1] * ((i % 2 == 1) ? 0.1 : 10.0); break;
      case GridKind::GeometricIncreasing: widths[i] = widths[i - 1] * 1.5; break;
    }
  }
  widths *= (xmax - xmin) / widths.sum();
  Mesh1D mesh;
  mesh.mapping = mapping;
  mesh.grid = grid;
  mesh.boundaries.resize(elements + 1);
  mesh.boundaries[0] = xmin;
  for (int i = 0; i < elements; ++i) mesh.boundaries[i + 1] = mesh.boundaries[i] + widths[i];
  mesh.boundaries[elements] = xmax;
  return mesh;
}

}  // namespace sbpcpr

#endif  // SBPCPR_MESH_HPP
