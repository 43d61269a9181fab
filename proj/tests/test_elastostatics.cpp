#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wgrnoise/errors.hpp"
#include "wgrnoise/loads.hpp"
#include "wgrnoise/materials.hpp"
#include "wgrnoise/scan.hpp"
#include "wgrnoise/solver.hpp"

using namespace wgr;

namespace {

constexpr double kPi = std::numbers::pi;

const MaterialTable& caf2() {
  static const auto table = MaterialTable::load_file(std::string(WGRNOISE_DATA_DIR) + "/caf2.mat");
  return table;
}

ModeProfile supplied_profile(const ResonatorGeometry& geom) {
  static const auto table = load_mode_table(std::string(WGRNOISE_DATA_DIR) + "/caf2_modes.tbl");
  const auto m = find_supplied_mode(table, geom);
  REQUIRE(m.has_value());
  return mode_from_parameters(geom, m->nu, m->m, m->w_z, m->w_rho, m->rho0,
                              speed_of_light / m->nu, 1.43);
}

// Test-only quadrature of the volumetric conjugate force: midpoint grid over
// the Gaussian support, clipped by the sphere boundary.  Independent of the
// mesh and of the assembly code.
double eo_force_grid_sphere(double R, const ModeProfile& p, double Sigma0) {
  const int nr = 1600, nz = 1200;
  const double rho_lo = p.rho0 - 8 * p.w_rho, rho_hi = R;
  const double drho = (rho_hi - rho_lo) / nr;
  double total = 0;
  for (int i = 0; i < nr; ++i) {
    const double rho = rho_lo + (i + 0.5) * drho;
    const double zmax = std::min(8 * p.w_z, std::sqrt(std::max(0.0, R * R - rho * rho)));
    if (zmax <= 0) continue;
    const double dz = zmax / nz;
    const double x = rho - p.rho0;
    double col = 0;
    for (int j = 0; j < nz; ++j) {
      const double z = (j + 0.5) * dz;
      const double d = std::hypot(x, z);
      const double w =
          Sigma0 * std::exp(-x * x / (p.w_rho * p.w_rho) - z * z / (p.w_z * p.w_z));
      col += (std::abs(x) + std::abs(z)) / d * w * dz;
    }
    total += col * rho * drho;
  }
  return 4 * kPi * total;  // mirror half and revolution
}

// Signed version of the same integral (no magnitudes); nearly zero by the
// odd symmetry of the direction factors.
double eo_force_grid_signed(double R, const ModeProfile& p, double Sigma0) {
  const int nr = 1600, nz = 1200;
  const double rho_lo = p.rho0 - 8 * p.w_rho, rho_hi = std::min(R, p.rho0 + 8 * p.w_rho);
  const double drho = (rho_hi - rho_lo) / nr;
  double total = 0;
  for (int i = 0; i < nr; ++i) {
    const double rho = rho_lo + (i + 0.5) * drho;
    const double zmax = std::min(8 * p.w_z, std::sqrt(std::max(0.0, R * R - rho * rho)));
    if (zmax <= 0) continue;
    const double dz = zmax / nz;
    const double x = rho - p.rho0;
    double col = 0;
    for (int j = 0; j < nz; ++j) {
      const double z = (j + 0.5) * dz;
      const double d = std::hypot(x, z);
      const double w =
          Sigma0 * std::exp(-x * x / (p.w_rho * p.w_rho) - z * z / (p.w_z * p.w_z));
      // Sigma_z integrates to zero over the mirrored halves already; the
      // rho component survives only through the rho weight.
      col += (-x / d) * w * dz;
    }
    total += col * rho * drho;
  }
  return 4 * kPi * total;
}

}  // namespace

TEST_CASE("closed forms: uniform sphere") {
  // Hand evaluation of (2 pi / 3) P^2 R^3 / kappa at P = 1e6, R = 1 mm.
  CHECK(analytic_uniform_sphere_energy(1e6, 1e-3, 90e9) ==
        doctest::Approx(2.3271056693257727e-8).epsilon(1e-12));
  CHECK(analytic_uniform_sphere_energy(1e6, 2e-3, 90e9) /
            analytic_uniform_sphere_energy(1e6, 1e-3, 90e9) ==
        doctest::Approx(8.0).epsilon(1e-12));
  CHECK(analytic_uniform_sphere_force(1e6, 1e-3) == doctest::Approx(12.566370614).epsilon(1e-9));
}

TEST_CASE("closed forms: plane-strain tube") {
  const auto t = analytic_tube_energy(1e6, 5.81e-6, 1e-3, 90e9, 45e9, 0.3);
  CHECK(t.U == doctest::Approx(3.1729462202248814e-12).epsilon(1e-12));
  CHECK(t.F == doctest::Approx(0.22936960628131672).epsilon(1e-12));
  CHECK(t.sigma_zz == doctest::Approx(-2 * 0.3 * 1e6).epsilon(1e-12));

  const auto t2 = analytic_tube_energy(2e6, 5.81e-6, 1e-3, 90e9, 45e9, 0.3);
  CHECK(t2.F == doctest::Approx(2 * t.F).epsilon(1e-12));
  CHECK(t2.U == doctest::Approx(4 * t.U).epsilon(1e-12));

  // Vanishing shear stiffness leaves the bulk term alone.
  const auto t3 = analytic_tube_energy(1e6, 5.81e-6, 1e-3, 90e9, 0.0, 0.5);
  CHECK(t3.U == doctest::Approx(kPi * kPi * 5.81e-6 * 5.81e-6 * 1e-3 * 1e12 / 90e9).epsilon(1e-12));
}

TEST_CASE("FEM reproduces the pressurized sphere exactly to discretization error") {
  const auto geom = ResonatorGeometry::sphere(1e-3);
  const auto profile = supplied_profile(geom);
  const auto moduli = isotropic_moduli(caf2(), 300.0, true);
  const Mesh mesh = build_mesh(geom, profile);
  const auto res = solve_static(mesh, moduli, uniform_pressure_load(1e6));
  CHECK(res.U == doctest::Approx(analytic_uniform_sphere_energy(1e6, geom.R, moduli.kappa))
                     .epsilon(0.01));
  CHECK(res.F == doctest::Approx(analytic_uniform_sphere_force(1e6, geom.R)).epsilon(0.005));
  CHECK(res.residual_norm < 1e-8);
}

TEST_CASE("BB load: closed-form force and quadrature agree within 0.5%") {
  const auto geom = ResonatorGeometry::sphere(1e-3);
  const auto profile = supplied_profile(geom);
  const auto moduli = isotropic_moduli(caf2(), 300.0, true);
  const auto load = bb_surface_load(profile, 1e6);
  CHECK(load.bb_analytic_force(geom.R) == doctest::Approx(0.150).epsilon(0.01));
  const Mesh mesh = build_mesh(geom, profile);
  const auto res = solve_static(mesh, moduli, load);
  CHECK(res.F == doctest::Approx(load.bb_analytic_force(geom.R)).epsilon(0.005));
  // Published solve at the same load: U = 4.4e-11 J within a factor of 2.
  CHECK(res.U / 4.4e-11 > 0.5);
  CHECK(res.U / 4.4e-11 < 2.0);

  const auto disk_profile = supplied_profile(ResonatorGeometry::disk(1e-3, 1.5e-4));
  CHECK(bb_surface_load(disk_profile, 1e6).bb_analytic_force(1e-3) ==
        doctest::Approx(0.091).epsilon(0.01));
}

TEST_CASE("load linearity: F scales with amplitude, U quadratically") {
  const auto geom = ResonatorGeometry::sphere(1e-4);
  const auto profile = supplied_profile(geom);
  const auto moduli = isotropic_moduli(caf2(), 300.0, true);
  const Mesh mesh = build_mesh(geom, profile);
  const auto one = solve_static(mesh, moduli, bb_surface_load(profile, 1e6));
  const auto two = solve_static(mesh, moduli, bb_surface_load(profile, 2e6));
  CHECK(two.F == doctest::Approx(2 * one.F).epsilon(1e-12));
  CHECK(two.U == doctest::Approx(4 * one.U).epsilon(1e-12));

  const auto eo1 = solve_static(mesh, moduli, eo_volumetric_load(profile, 1e6));
  const auto eo_half = solve_static(mesh, moduli, eo_volumetric_load(profile, 5e5));
  CHECK(eo_half.F == doctest::Approx(eo1.F / 2).epsilon(1e-12));
}

TEST_CASE("U/F^2 is amplitude-invariant across three decades") {
  const auto geom = ResonatorGeometry::sphere(1e-4);
  const auto profile = supplied_profile(geom);
  const auto moduli = isotropic_moduli(caf2(), 300.0, true);
  const Mesh mesh = build_mesh(geom, profile);
  double ref = 0;
  for (double amp : {1e4, 3e5, 1e7}) {
    const auto res = solve_static(mesh, moduli, bb_surface_load(profile, amp));
    const double ratio = res.U / (res.F * res.F);
    if (ref == 0)
      ref = ratio;
    else
      CHECK(ratio == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("EO conjugate force matches an independent grid quadrature") {
  const auto geom = ResonatorGeometry::sphere(1e-3);
  const auto profile = supplied_profile(geom);
  const auto moduli = isotropic_moduli(caf2(), 300.0, true);
  const Mesh mesh = build_mesh(geom, profile);
  const auto res = solve_static(mesh, moduli, eo_volumetric_load(profile, 1e6));
  const double oracle = eo_force_grid_sphere(geom.R, profile, 1e6);
  CHECK(res.F == doctest::Approx(oracle).epsilon(0.01));
  CHECK(res.truncated_support);  // mode center sits one half-width inside the rim
}

TEST_CASE("signed volumetric integral vanishes for a mode away from boundaries") {
  ModeProfile p;
  p.w_rho = p.w_z = 5e-6;
  p.rho0 = 0.5e-3;
  p.nu = 1.9e14;
  p.m = 5706;
  p.lambda = 1.565e-6;
  const double unsigned_F = eo_force_grid_sphere(1e-3, p, 1e6);
  const double signed_F = eo_force_grid_signed(1e-3, p, 1e6);
  CHECK(std::abs(signed_F) < 0.01 * unsigned_F);
}

TEST_CASE("interior mode leaves the truncation diagnostic clear") {
  ModeProfile p;
  p.w_rho = 2e-5;
  p.w_z = 3e-5;
  p.rho0 = 0.4e-3;
  p.nu = 1.0e14;
  p.m = 3000;
  p.lambda = 3e-6;
  const auto geom = ResonatorGeometry::sphere(1e-3);
  const auto moduli = isotropic_moduli(caf2(), 300.0, true);
  const Mesh mesh = build_mesh(geom, p);
  const auto res = solve_static(mesh, moduli, eo_volumetric_load(p, 1e6));
  CHECK_FALSE(res.truncated_support);
}

TEST_CASE("stiffness reciprocity: cross works agree") {
  const auto geom = ResonatorGeometry::sphere(1e-4);
  const auto profile = supplied_profile(geom);
  const auto moduli = isotropic_moduli(caf2(), 300.0, true);
  const Mesh mesh = build_mesh(geom, profile);
  std::vector<double> ua, fa, ub, fb;
  solve_static(mesh, moduli, bb_surface_load(profile, 1e6), {}, &ua, &fa);
  solve_static(mesh, moduli, eo_volumetric_load(profile, 1e6), {}, &ub, &fb);
  REQUIRE(ua.size() == fb.size());
  double wab = 0, wba = 0;
  for (std::size_t i = 0; i < ua.size(); ++i) {
    wab += ua[i] * fb[i];
    wba += ub[i] * fa[i];
  }
  CHECK(wab == doctest::Approx(wba).epsilon(1e-8));
}

TEST_CASE("energy increases monotonically under refinement") {
  const auto geom = ResonatorGeometry::sphere(1e-4);
  const auto profile = supplied_profile(geom);
  const auto moduli = isotropic_moduli(caf2(), 300.0, true);
  const auto load = bb_surface_load(profile, 1e6);
  double prev = 0;
  for (int level = 0; level <= 2; ++level) {
    RefinementSpec spec;
    spec.level = level;
    const auto res = solve_static(build_mesh(geom, profile, spec), moduli, load);
    CHECK(res.U >= prev * (1 - 1e-6));
    prev = res.U;
  }
}

TEST_CASE("refinement wrapper reports a bounded energy estimate") {
  const auto geom = ResonatorGeometry::sphere(1e-4);
  const auto profile = supplied_profile(geom);
  const auto moduli = isotropic_moduli(caf2(), 300.0, true);
  const auto res = solve_with_refinement(geom, profile, moduli, bb_surface_load(profile, 1e6));
  CHECK(res.energy_error_est < 0.05 * res.U);
  CHECK(res.U_coarse > 0);
  CHECK(res.level == 1);
}

TEST_CASE("missing symmetry constraint leaves a singular system") {
  const auto geom = ResonatorGeometry::sphere(1e-4);
  const auto profile = supplied_profile(geom);
  const auto moduli = isotropic_moduli(caf2(), 300.0, true);
  const Mesh mesh = build_mesh(geom, profile);
  SymmetryConstraints loose;
  loose.plane = false;  // rigid axial translation is no longer removed
  CHECK_THROWS_AS(solve_static(mesh, moduli, bb_surface_load(profile, 1e6), loose), SolverError);
}
