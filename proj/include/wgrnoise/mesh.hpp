#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "wgrnoise/modes.hpp"

namespace wgr {

/// Mesh grading control.  Level ell halves every target length scale
/// ell - 1 times, so successive levels refine uniformly (element count grows
/// about fourfold per level).
struct RefinementSpec {
  int level = 1;
  double mode_size_divisor = 4.0;   // element diameter in the mode region <= min(w_z, w_rho)/divisor
  double coarse_fraction = 1.0 / 12.0;  // far-field element size = R * coarse_fraction
  double growth = 1.3;              // geometric grading ratio away from the mode
  double mode_extent = 3.0;         // graded fine zone reaches +- extent * half-width
  std::size_t max_elements = 4u << 20;

  double scale() const;  // 2^{1 - level}
};

/// One boundary edge of the outer (loaded) surface: the two end nodes, the
/// midside node, the opposite vertex of the owning triangle (fixes the
/// outward-normal orientation), and the surface arc length s measured from
/// the equator at the three nodes.
struct BoundaryEdge {
  std::array<int, 3> nodes{};  // end, end, midside
  int opposite = -1;
  std::array<double, 3> s{};
};

/// Axisymmetric quadratic-triangle mesh of the z >= 0 half of the resonator
/// cross-section.  Immutable after construction.
struct Mesh {
  std::vector<double> rho, z;                // node coordinates, m
  std::vector<std::array<int, 6>> tris;      // corners 0..2, midsides 3..5
  std::vector<BoundaryEdge> surface;         // outer surface, ordered by s
  std::vector<std::uint8_t> on_axis;         // rho = 0
  std::vector<std::uint8_t> on_plane;        // z = 0 symmetry plane
  double mode_h = 0;                         // fine-zone target size actually used
  int order = 2;

  std::size_t node_count() const { return rho.size(); }
  std::size_t element_count() const { return tris.size(); }
  std::size_t dof_count() const { return 2 * rho.size(); }
};

Mesh build_mesh(const ResonatorGeometry& geom, const ModeProfile& profile,
                const RefinementSpec& spec = {});

/// Throws MeshError on inverted elements (nonpositive Jacobian at any
/// quadrature point) or a broken boundary chain.
void check_mesh(const Mesh& mesh);

/// Largest distance from the quadratic boundary edges to the analytic
/// boundary curve, sampled along each surface edge.
double max_boundary_chord_error(const Mesh& mesh, const ResonatorGeometry& geom);

/// Largest element diameter among elements whose centroid lies within
/// +-2 half-widths of the mode center.
double mode_region_element_size(const Mesh& mesh, const ModeProfile& profile);

}  // namespace wgr
