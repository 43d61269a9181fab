#include "wgrnoise/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>

#include "fem_detail.hpp"
#include "wgrnoise/errors.hpp"

namespace wgr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Monotone positions over [0, total]: spacing h_fine inside [0, fine_extent],
// then geometric growth to h_max.  An extra spacing cap can be imposed while
// pos < cap_end (used to bound the sagitta of curved boundary segments).
std::vector<double> graded_ladder(double total, double h_fine, double fine_extent, double growth,
                                  double h_max, double cap = kInf, double cap_end = 0) {
  if (!(total > 0 && h_fine > 0 && growth > 1 && h_max >= h_fine))
    throw MeshError("invalid grading parameters");
  std::vector<double> pos{0.0};
  double h = h_fine;
  while (true) {
    if (pos.size() > 400000) throw MeshError("refinement budget exceeded while grading");
    double step = pos.back() < fine_extent ? h_fine : std::min(h * growth, h_max);
    if (pos.back() < cap_end) step = std::min(step, cap);
    h = step;
    if (pos.back() + 1.45 * step >= total) {
      const double rem = total - pos.back();
      if (rem > 1.2 * step) pos.push_back(pos.back() + rem / 2);
      pos.push_back(total);
      break;
    }
    pos.push_back(pos.back() + step);
  }
  return pos;
}

struct MeshBuilder {
  Mesh mesh;
  std::vector<std::pair<int, double>> boundary_chain;        // (corner node, s), ordered
  std::function<std::array<double, 2>(double)> boundary_at;  // s -> point on the outer curve

  int add_node(double rho, double z, bool axis, bool plane) {
    mesh.rho.push_back(rho);
    mesh.z.push_back(z);
    mesh.on_axis.push_back(axis ? 1 : 0);
    mesh.on_plane.push_back(plane ? 1 : 0);
    return static_cast<int>(mesh.rho.size()) - 1;
  }

  // Corner-only triangle with counterclockwise orientation enforced.
  void add_triangle(int a, int b, int c) {
    const double ax = mesh.rho[a], ay = mesh.z[a];
    const double area2 = (mesh.rho[b] - ax) * (mesh.z[c] - ay) - (mesh.z[b] - ay) * (mesh.rho[c] - ax);
    if (area2 == 0) throw MeshError("degenerate element");
    if (area2 < 0) std::swap(b, c);
    mesh.tris.push_back({a, b, c, -1, -1, -1});
  }

  void promote_and_finalize() {
    std::map<std::pair<int, int>, double> boundary_s_mid;  // sorted pair -> midside s
    for (std::size_t k = 0; k + 1 < boundary_chain.size(); ++k) {
      auto [n0, s0] = boundary_chain[k];
      auto [n1, s1] = boundary_chain[k + 1];
      boundary_s_mid[std::minmax(n0, n1)] = 0.5 * (s0 + s1);
    }

    std::map<std::pair<int, int>, int> midside;
    auto mid_of = [&](int a, int b) {
      auto key = std::minmax(a, b);
      if (auto it = midside.find(key); it != midside.end()) return it->second;
      double mr = 0.5 * (mesh.rho[a] + mesh.rho[b]);
      double mz = 0.5 * (mesh.z[a] + mesh.z[b]);
      if (auto bs = boundary_s_mid.find(key); bs != boundary_s_mid.end()) {
        const auto p = boundary_at(bs->second);
        mr = p[0];
        mz = p[1];
      }
      const bool axis = mesh.on_axis[a] && mesh.on_axis[b];
      const bool plane = mesh.on_plane[a] && mesh.on_plane[b];
      if (axis) mr = 0.0;
      if (plane) mz = 0.0;
      const int id = add_node(mr, mz, axis, plane);
      midside[key] = id;
      return id;
    };

    std::map<std::pair<int, int>, std::pair<int, int>> owner;  // pair -> (tri, opposite)
    for (std::size_t t = 0; t < mesh.tris.size(); ++t) {
      auto& tri = mesh.tris[t];
      tri[3] = mid_of(tri[0], tri[1]);
      tri[4] = mid_of(tri[1], tri[2]);
      tri[5] = mid_of(tri[2], tri[0]);
      owner[std::minmax(tri[0], tri[1])] = {static_cast<int>(t), tri[2]};
      owner[std::minmax(tri[1], tri[2])] = {static_cast<int>(t), tri[0]};
      owner[std::minmax(tri[2], tri[0])] = {static_cast<int>(t), tri[1]};
    }

    for (std::size_t k = 0; k + 1 < boundary_chain.size(); ++k) {
      auto [n0, s0] = boundary_chain[k];
      auto [n1, s1] = boundary_chain[k + 1];
      const auto key = std::minmax(n0, n1);
      auto own = owner.find(key);
      if (own == owner.end()) throw MeshError("broken boundary chain");
      BoundaryEdge e;
      e.nodes = {n0, n1, midside.at(key)};
      e.opposite = own->second.second;
      e.s = {s0, s1, 0.5 * (s0 + s1)};
      mesh.surface.push_back(e);
    }
  }
};

// Quarter-circle block in polar coordinates around (center_rho, 0): node
// rings at radii `radius - d` for d in d_ladder (last entry must equal
// radius; it becomes the fan center), angular positions s/radius for s in
// s_ladder.  Ring 0 lies on the circle.  Nodes at the top angle snap to
// rho = center_rho exactly (the symmetry axis for a sphere, the conforming
// interface for a disk rim).
struct PolarBlock {
  std::vector<std::vector<int>> ring;  // [radial][angular]
  int center = -1;
};

PolarBlock build_polar_block(MeshBuilder& b, double center_rho, double radius,
                             const std::vector<double>& s_ladder,
                             const std::vector<double>& d_ladder, bool top_is_axis) {
  const std::size_t n_ang = s_ladder.size();
  const std::size_t n_rad = d_ladder.size();
  if (n_rad < 3 || n_ang < 3) throw MeshError("polar block too coarse");

  PolarBlock blk;
  blk.ring.resize(n_rad - 1);
  for (std::size_t i = 0; i + 1 < n_rad; ++i) {
    const double r = radius - d_ladder[i];
    blk.ring[i].resize(n_ang);
    for (std::size_t j = 0; j < n_ang; ++j) {
      const double a = s_ladder[j] / radius;
      const bool top = (j + 1 == n_ang);
      const bool plane = (j == 0);
      const double rho = top ? center_rho : center_rho + r * std::cos(a);
      const double zz = plane ? 0.0 : r * std::sin(a);
      blk.ring[i][j] = b.add_node(rho, zz, top && top_is_axis, plane);
    }
  }
  blk.center = b.add_node(center_rho, 0.0, top_is_axis, true);

  for (std::size_t i = 0; i + 2 < n_rad; ++i) {
    for (std::size_t j = 0; j + 1 < n_ang; ++j) {
      const int a = blk.ring[i][j], c = blk.ring[i][j + 1];
      const int d = blk.ring[i + 1][j], e = blk.ring[i + 1][j + 1];
      b.add_triangle(a, d, e);
      b.add_triangle(a, e, c);
    }
  }
  for (std::size_t j = 0; j + 1 < n_ang; ++j)
    b.add_triangle(blk.center, blk.ring[n_rad - 2][j], blk.ring[n_rad - 2][j + 1]);
  return blk;
}

struct GradingSizes {
  double h_fine;   // mode-region spacing (element diameter/sqrt(2))
  double h_max;    // far-field spacing
  double cap;      // boundary spacing cap keeping curved-edge sagitta small
  double s_fine;   // fine extent along the surface
  double d_fine;   // fine extent in depth
};

GradingSizes grading_sizes(const ResonatorGeometry& geom, const ModeProfile& profile,
                           const RefinementSpec& spec, double curvature_radius) {
  GradingSizes g;
  const double sc = spec.scale();
  const double h1 = std::min(profile.w_z, profile.w_rho) / spec.mode_size_divisor / std::sqrt(2.0);
  g.h_fine = h1 * sc;
  g.h_max = std::max(g.h_fine, geom.R * spec.coarse_fraction * sc);
  g.cap = std::sqrt(curvature_radius * h1) * sc;
  g.s_fine = spec.mode_extent * profile.w_z;
  g.d_fine = (geom.R - profile.rho0) + spec.mode_extent * profile.w_rho;
  return g;
}

Mesh build_sphere_mesh(const ResonatorGeometry& geom, const ModeProfile& profile,
                       const RefinementSpec& spec) {
  const double R = geom.R;
  const GradingSizes g = grading_sizes(geom, profile, spec, R);
  const auto s_ladder =
      graded_ladder(R * kPi / 2.0, g.h_fine, g.s_fine, spec.growth, g.h_max, g.cap, R * kPi / 2.0);
  const auto d_ladder = graded_ladder(R, g.h_fine, g.d_fine, spec.growth, g.h_max);

  const std::size_t quads = (d_ladder.size() - 1) * (s_ladder.size() - 1);
  if (2 * quads > spec.max_elements) throw MeshError("refinement budget exceeded");

  MeshBuilder b;
  b.boundary_at = [R](double s) {
    const double a = s / R;
    return std::array<double, 2>{R * std::cos(a), R * std::sin(a)};
  };
  const PolarBlock blk = build_polar_block(b, 0.0, R, s_ladder, d_ladder, true);
  for (std::size_t j = 0; j < s_ladder.size(); ++j)
    b.boundary_chain.push_back({blk.ring[0][j], s_ladder[j]});
  b.promote_and_finalize();
  b.mesh.mode_h = g.h_fine;
  return std::move(b.mesh);
}

struct DiskRim {
  double R, S, half_t;
  double z_join, t_arc, s_arc, s_rim_end, rho_top;

  explicit DiskRim(const ResonatorGeometry& g) : R(g.R), S(g.S), half_t(g.thickness / 2.0) {
    z_join = std::min(S, half_t);
    t_arc = std::asin(z_join / S);
    s_arc = S * t_arc;
    s_rim_end = s_arc + (half_t > S ? half_t - S : 0.0);
    rho_top = rho_rim(half_t);
    if (!(rho_top > 1e-6 * R)) throw MeshError("degenerate disk geometry: rim pinches off");
  }

  double rho_rim(double z) const {
    if (z >= S) return R - S;
    return R - S + std::sqrt(S * S - z * z);
  }

  double z_of_s(double s) const {
    if (s <= s_arc) return S * std::sin(s / S);
    return z_join + (s - s_arc);
  }

  std::array<double, 2> boundary_at(double s) const {
    if (s <= s_arc) {
      const double t = s / S;
      return {R - S + S * std::cos(t), S * std::sin(t)};
    }
    if (s <= s_rim_end) return {R - S, z_join + (s - s_arc)};
    return {std::max(0.0, rho_top - (s - s_rim_end)), half_t};
  }
};

// Thick disk (S < thickness/2): the rim arc spans the full quarter circle, so
// a transfinite grid degenerates where the arc turns horizontal.  Mesh the
// rim with a conforming polar block around the arc center and the core with
// a rectangle grid sharing the interface nodes at rho = R - S.
Mesh build_disk_mesh_walled(const ResonatorGeometry& geom, const ModeProfile& profile,
                            const RefinementSpec& spec) {
  const DiskRim rim(geom);
  const double S = geom.S;
  const GradingSizes g = grading_sizes(geom, profile, spec, S);
  const double h_max_polar = std::max(g.h_fine, std::min(g.h_max, S / 3.0));
  const auto s_ladder =
      graded_ladder(rim.s_arc, g.h_fine, g.s_fine, spec.growth, h_max_polar, g.cap, rim.s_arc);
  const auto d_ladder = graded_ladder(S, g.h_fine, g.d_fine, spec.growth, h_max_polar);

  MeshBuilder b;
  b.boundary_at = [rim](double s) { return rim.boundary_at(s); };
  const PolarBlock blk = build_polar_block(b, geom.R - S, S, s_ladder, d_ladder, false);

  // Interface nodes at rho = R - S, ascending in z (fan center at z = 0, then
  // the top-angle column of the polar block from the inside out).
  std::vector<std::pair<double, int>> iface{{0.0, blk.center}};
  for (std::size_t i = d_ladder.size() - 1; i-- > 0;)
    iface.push_back({S - d_ladder[i], blk.ring[i].back()});

  // Rectangle rows: interface heights, then the wall above the arc.
  std::vector<double> z_rows;
  for (const auto& [zz, id] : iface) z_rows.push_back(zz);
  const double wall_height = rim.half_t - S;
  const double h_wall0 = std::max(g.h_fine, std::min(g.h_max, std::min(S, wall_height) / 2.0));
  const auto wall_ladder = graded_ladder(wall_height, h_wall0, 0.0, spec.growth, g.h_max);
  for (std::size_t k = 1; k < wall_ladder.size(); ++k) z_rows.push_back(S + wall_ladder[k]);

  const double core_width = geom.R - S;
  const double h_col0 = std::max(g.h_fine, std::min(g.h_max, std::min(S, core_width) / 2.0));
  const auto col_ladder = graded_ladder(core_width, h_col0, 0.0, spec.growth, g.h_max);

  const std::size_t n_rows = z_rows.size(), n_cols = col_ladder.size();
  const std::size_t quads = (d_ladder.size() - 1) * (s_ladder.size() - 1) +
                            (n_rows - 1) * (n_cols - 1);
  if (2 * quads > spec.max_elements) throw MeshError("refinement budget exceeded");

  std::vector<std::vector<int>> grid(n_cols, std::vector<int>(n_rows));
  for (std::size_t c = 0; c < n_cols; ++c) {
    const double rho = geom.R - S - col_ladder[c];
    for (std::size_t r = 0; r < n_rows; ++r) {
      if (c == 0 && r < iface.size()) {
        grid[c][r] = iface[r].second;
        continue;
      }
      const bool axis = (c + 1 == n_cols);
      const bool plane = (r == 0);
      grid[c][r] = b.add_node(axis ? 0.0 : rho, plane ? 0.0 : z_rows[r], axis, plane);
    }
  }
  for (std::size_t c = 0; c + 1 < n_cols; ++c)
    for (std::size_t r = 0; r + 1 < n_rows; ++r) {
      b.add_triangle(grid[c][r], grid[c + 1][r], grid[c + 1][r + 1]);
      b.add_triangle(grid[c][r], grid[c + 1][r + 1], grid[c][r + 1]);
    }

  for (std::size_t j = 0; j < s_ladder.size(); ++j)
    b.boundary_chain.push_back({blk.ring[0][j], s_ladder[j]});
  for (std::size_t r = iface.size(); r < n_rows; ++r)
    b.boundary_chain.push_back({grid[0][r], rim.s_arc + (z_rows[r] - S)});
  for (std::size_t c = 1; c < n_cols; ++c)
    b.boundary_chain.push_back({grid[c][n_rows - 1], rim.s_rim_end + col_ladder[c]});

  b.promote_and_finalize();
  b.mesh.mode_h = g.h_fine;
  return std::move(b.mesh);
}

// Shallow rim (S >= thickness/2): the arc meets the top face while its
// tangent is still well away from horizontal, so a boundary-fitted
// transfinite grid with arc-length rows stays well shaped.
Mesh build_disk_mesh_transfinite(const ResonatorGeometry& geom, const ModeProfile& profile,
                                 const RefinementSpec& spec) {
  const DiskRim rim(geom);
  GradingSizes g = grading_sizes(geom, profile, spec, geom.S);
  // Columns follow rho = u rho_rim(z) and shear by ~z/S per unit height;
  // shrink the fine spacing so sheared diagonals stay inside the mode-region
  // size bound.
  const double shear = std::min(0.5, spec.mode_extent * profile.w_z / geom.S);
  g.h_fine *= std::sqrt(2.0) / std::sqrt((1 + shear) * (1 + shear) + 1);
  const auto s_ladder =
      graded_ladder(rim.s_rim_end, g.h_fine, g.s_fine, spec.growth, g.h_max, g.cap, rim.s_arc);
  const auto d_ladder = graded_ladder(geom.R, g.h_fine, g.d_fine, spec.growth, g.h_max);

  const std::size_t n_row = s_ladder.size();
  const std::size_t n_col = d_ladder.size();
  const std::size_t quads = (n_col - 1) * (n_row - 1);
  if (2 * quads > spec.max_elements) throw MeshError("refinement budget exceeded");

  MeshBuilder b;
  b.boundary_at = [rim](double s) { return rim.boundary_at(s); };

  std::vector<std::vector<int>> node(n_col, std::vector<int>(n_row));
  for (std::size_t i = 0; i < n_col; ++i) {
    const double u = 1.0 - d_ladder[i] / geom.R;
    for (std::size_t j = 0; j < n_row; ++j) {
      const double zz = (j == 0) ? 0.0 : rim.z_of_s(s_ladder[j]);
      const bool axis = (i + 1 == n_col);
      const bool plane = (j == 0);
      node[i][j] = b.add_node(axis ? 0.0 : u * rim.rho_rim(zz), plane ? 0.0 : zz, axis, plane);
    }
  }
  for (std::size_t i = 0; i + 1 < n_col; ++i)
    for (std::size_t j = 0; j + 1 < n_row; ++j) {
      b.add_triangle(node[i][j], node[i + 1][j], node[i + 1][j + 1]);
      b.add_triangle(node[i][j], node[i + 1][j + 1], node[i][j + 1]);
    }

  // Outer boundary: up the rim, then across the top face to the axis.
  for (std::size_t j = 0; j < n_row; ++j) b.boundary_chain.push_back({node[0][j], s_ladder[j]});
  for (std::size_t i = 1; i < n_col; ++i) {
    const double s = rim.s_rim_end + (rim.rho_top - b.mesh.rho[node[i][n_row - 1]]);
    b.boundary_chain.push_back({node[i][n_row - 1], s});
  }
  b.promote_and_finalize();
  b.mesh.mode_h = g.h_fine;
  return std::move(b.mesh);
}

}  // namespace

double RefinementSpec::scale() const { return std::pow(0.5, level - 1); }

Mesh build_mesh(const ResonatorGeometry& geom, const ModeProfile& profile,
                const RefinementSpec& spec) {
  geom.validate();
  if (!(profile.w_z > 0 && profile.w_rho > 0 && profile.rho0 > 0))
    throw MeshError("mode profile with positive widths required to grade the mesh");
  if (spec.level < 0 || spec.level > 12) throw MeshError("refinement level out of range");
  Mesh mesh;
  if (geom.shape == Shape::Sphere)
    mesh = build_sphere_mesh(geom, profile, spec);
  else if (geom.S < geom.thickness / 2.0)
    mesh = build_disk_mesh_walled(geom, profile, spec);
  else
    mesh = build_disk_mesh_transfinite(geom, profile, spec);
  check_mesh(mesh);
  return mesh;
}

void check_mesh(const Mesh& mesh) {
  const auto rule = fem::tri_rule();
  double N[6], dxi[6], deta[6];
  for (const auto& tri : mesh.tris) {
    for (const auto& qp : rule) {
      fem::shape_p2(qp.xi, qp.eta, N, dxi, deta);
      double j11 = 0, j12 = 0, j21 = 0, j22 = 0;
      for (int k = 0; k < 6; ++k) {
        j11 += dxi[k] * mesh.rho[tri[k]];
        j21 += deta[k] * mesh.rho[tri[k]];
        j12 += dxi[k] * mesh.z[tri[k]];
        j22 += deta[k] * mesh.z[tri[k]];
      }
      if (!(j11 * j22 - j12 * j21 > 0)) throw MeshError("inverted element (nonpositive Jacobian)");
    }
  }
  for (const auto& e : mesh.surface)
    if (e.opposite < 0) throw MeshError("boundary edge without owner");
}

double max_boundary_chord_error(const Mesh& mesh, const ResonatorGeometry& geom) {
  double worst = 0;
  double N[3], dN[3];
  for (const auto& e : mesh.surface) {
    for (double t = -0.9; t < 0.95; t += 0.2) {
      fem::shape_edge_p2(t, N, dN);
      double rho = 0, zz = 0;
      for (int k = 0; k < 3; ++k) {
        rho += N[k] * mesh.rho[e.nodes[k]];
        zz += N[k] * mesh.z[e.nodes[k]];
      }
      double dist;
      if (geom.shape == Shape::Sphere) {
        dist = std::abs(std::hypot(rho, zz) - geom.R);
      } else {
        const DiskRim rim(geom);
        const double vx = rho - (geom.R - geom.S);
        double ang = std::atan2(zz, vx);
        ang = std::clamp(ang, 0.0, rim.t_arc);
        double d = std::hypot(rho - (geom.R - geom.S + geom.S * std::cos(ang)),
                              zz - geom.S * std::sin(ang));
        if (rim.half_t > geom.S) {
          const double zc = std::clamp(zz, rim.z_join, rim.half_t);
          d = std::min(d, std::hypot(rho - (geom.R - geom.S), zz - zc));
        }
        const double rc = std::clamp(rho, 0.0, rim.rho_top);
        d = std::min(d, std::hypot(rho - rc, zz - rim.half_t));
        dist = d;
      }
      worst = std::max(worst, dist);
    }
  }
  return worst;
}

double mode_region_element_size(const Mesh& mesh, const ModeProfile& profile) {
  double worst = 0;
  for (const auto& tri : mesh.tris) {
    const double cr = (mesh.rho[tri[0]] + mesh.rho[tri[1]] + mesh.rho[tri[2]]) / 3.0;
    const double cz = (mesh.z[tri[0]] + mesh.z[tri[1]] + mesh.z[tri[2]]) / 3.0;
    if (std::abs(cr - profile.rho0) > 2.0 * profile.w_rho || std::abs(cz) > 2.0 * profile.w_z)
      continue;
    for (int a = 0; a < 6; ++a)
      for (int bb = a + 1; bb < 6; ++bb)
        worst = std::max(worst, std::hypot(mesh.rho[tri[a]] - mesh.rho[tri[bb]],
                                           mesh.z[tri[a]] - mesh.z[tri[bb]]));
  }
  return worst;
}

}  // namespace wgr
