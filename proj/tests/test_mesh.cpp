#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wgrnoise/errors.hpp"
#include "wgrnoise/mesh.hpp"
#include "wgrnoise/scan.hpp"

using namespace wgr;

namespace {

ModeProfile supplied_profile(const ResonatorGeometry& geom) {
  static const auto table =
      load_mode_table(std::string(WGRNOISE_DATA_DIR) + "/caf2_modes.tbl");
  const auto m = find_supplied_mode(table, geom);
  REQUIRE(m.has_value());
  return mode_from_parameters(geom, m->nu, m->m, m->w_z, m->w_rho, m->rho0,
                              speed_of_light / m->nu, 1.43);
}

}  // namespace

TEST_CASE("mode-region element size honors the quarter-width rule") {
  const auto geom = ResonatorGeometry::sphere(1e-3);
  const auto profile = supplied_profile(geom);
  const Mesh mesh = build_mesh(geom, profile);
  const double bound = std::min(profile.w_z, profile.w_rho) / 4.0;
  CHECK(mode_region_element_size(mesh, profile) <= bound * (1 + 1e-9));
  CHECK(mesh.mode_h > 0);
}

TEST_CASE("halving the target size roughly quadruples the element count") {
  const auto geom = ResonatorGeometry::sphere(1e-3);
  const auto profile = supplied_profile(geom);
  RefinementSpec level1, level2;
  level2.level = 2;
  const auto coarse = build_mesh(geom, profile, level1);
  const auto fine = build_mesh(geom, profile, level2);
  const double ratio = double(fine.element_count()) / double(coarse.element_count());
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
}

TEST_CASE("boundary follows the analytic curve within 10 nm") {
  {
    const auto geom = ResonatorGeometry::sphere(1e-3);
    const Mesh mesh = build_mesh(geom, supplied_profile(geom));
    CHECK(max_boundary_chord_error(mesh, geom) < 1e-8);
  }
  {
    const auto geom = ResonatorGeometry::disk(1e-3, 1.5e-4);
    const Mesh mesh = build_mesh(geom, supplied_profile(geom));
    CHECK(max_boundary_chord_error(mesh, geom) < 1e-8);
  }
}

TEST_CASE("every bundled geometry meshes with positive Jacobians") {
  const std::vector<ResonatorGeometry> geoms = {
      ResonatorGeometry::sphere(1e-4),       ResonatorGeometry::sphere(1e-3),
      ResonatorGeometry::sphere(1e-2),       ResonatorGeometry::disk(1e-4, 1.5e-4),
      ResonatorGeometry::disk(1e-3, 1.5e-4), ResonatorGeometry::disk(1e-2, 1.5e-4),
      ResonatorGeometry::disk(1e-3, 1e-4),   ResonatorGeometry::disk(1e-3, 1e-3),
      ResonatorGeometry::disk(1e-3, 1e-2)};
  for (const auto& geom : geoms) {
    const auto profile = supplied_profile(geom);
    const Mesh mesh = build_mesh(geom, profile);  // check_mesh runs inside
    CHECK(mesh.element_count() > 100);
    CHECK(mesh.surface.size() > 10);
    CHECK(mode_region_element_size(mesh, profile) <=
          std::min(profile.w_z, profile.w_rho) / 4.0 * (1 + 1e-9));
    // The surface chain is ordered by arc length from the equator.
    double prev = -1;
    bool has_axis = false, has_plane = false;
    for (const auto& e : mesh.surface) {
      CHECK(e.s[0] > prev - 1e-15);
      prev = e.s[0];
    }
    for (std::size_t i = 0; i < mesh.node_count(); ++i) {
      if (mesh.on_axis[i]) {
        has_axis = true;
        CHECK(mesh.rho[i] == 0.0);
      }
      if (mesh.on_plane[i]) {
        has_plane = true;
        CHECK(mesh.z[i] == 0.0);
      }
    }
    CHECK(has_axis);
    CHECK(has_plane);
  }
}

TEST_CASE("refinement budget overruns are reported") {
  const auto geom = ResonatorGeometry::sphere(1e-3);
  const auto profile = supplied_profile(geom);
  RefinementSpec spec;
  spec.max_elements = 500;
  CHECK_THROWS_AS(build_mesh(geom, profile, spec), MeshError);
}

TEST_CASE("a rim that pinches off is a meshing failure") {
  // Thickness taller than the closed rim arc of an R < S disk.
  const auto geom = ResonatorGeometry::disk(1e-4, 1.5e-4, 4e-4);
  CHECK_THROWS_AS(build_mesh(geom, supplied_profile(ResonatorGeometry::disk(1e-4, 1.5e-4))),
                  MeshError);
}
