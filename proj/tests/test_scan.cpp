#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "wgrnoise/errors.hpp"
#include "wgrnoise/scan.hpp"

using namespace wgr;

namespace {

const std::string kData = WGRNOISE_DATA_DIR;

std::string write_temp_config(const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / "wgr_test_scan.cfg";
  std::ofstream out(path);
  out << "material " << kData << "/caf2.mat\n";
  out << "mode_table " << kData << "/caf2_modes.tbl\n";
  out << body;
  return path.string();
}

ScanConfig fast_config() {
  ScanConfig cfg;
  cfg.material_path = kData + "/caf2.mat";
  cfg.mode_table_path = kData + "/caf2_modes.tbl";
  cfg.geometries = {ResonatorGeometry::sphere(1e-4)};
  cfg.temperatures = {5.0, 300.0};
  cfg.taus = {1.0};
  return cfg;
}

}  // namespace

TEST_CASE("config files parse with relative paths and geometry lists") {
  const auto path = write_temp_config(
      "mode_source supplied\n"
      "geometry sphere 1e-3\n"
      "geometry disk 1e-3 1.5e-4 1e-3\n"
      "temperatures 5 300\n"
      "taus 1 10\n"
      "refine 2\n"
      "eo_mode quadrature\n"
      "gamma_tr 0.9\n"
      "threads 3\n");
  const auto cfg = load_scan_config(path);
  cfg.validate();
  CHECK(cfg.geometries.size() == 2);
  CHECK(cfg.geometries[1].thickness == 1e-3);
  CHECK(cfg.temperatures == std::vector<double>{5.0, 300.0});
  CHECK(cfg.taus == std::vector<double>{1.0, 10.0});
  CHECK(cfg.refine.level == 2);
  CHECK(cfg.eo_mode == EoCombination::QuadratureSum);
  CHECK(cfg.gamma_tr == 0.9);
  CHECK(cfg.threads == 3);
}

TEST_CASE("unknown keywords and malformed lines are parse errors") {
  CHECK_THROWS_AS(load_scan_config(write_temp_config("volume 3\n")), ParseError);
  CHECK_THROWS_AS(load_scan_config(write_temp_config("geometry cube 1e-3\n")), ParseError);
  CHECK_THROWS_AS(load_scan_config(write_temp_config("geometry sphere\n")), ParseError);
}

TEST_CASE("an empty temperature list fails config validation") {
  const auto cfg = load_scan_config(write_temp_config("geometry sphere 1e-3\n"));
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("mode table lookups match on shape, radius and curvature") {
  const auto table = load_mode_table(kData + "/caf2_modes.tbl");
  CHECK(table.size() == 9);
  const auto sphere = find_supplied_mode(table, ResonatorGeometry::sphere(1e-3));
  REQUIRE(sphere.has_value());
  CHECK(sphere->w_z == 13.5e-6);
  const auto disk = find_supplied_mode(table, ResonatorGeometry::disk(1e-3, 1.5e-4));
  REQUIRE(disk.has_value());
  CHECK(disk->w_z == 8.2e-6);
  CHECK(!find_supplied_mode(table, ResonatorGeometry::sphere(2e-3)).has_value());
}

TEST_CASE("scaling fit recovers an exact power law") {
  std::vector<NoiseBudget> rows;
  for (double x : {1e-4, 1e-3, 1e-2, 1e-1}) {
    NoiseBudget r;
    r.R = x;
    r.sigma_BB = 3.7 * std::pow(x, -2.0);
    rows.push_back(r);
  }
  const auto fit = fit_scaling(rows, "sigma_BB", "R");
  CHECK(fit.exponent == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(fit.residual < 1e-9);
  CHECK(fit.points == 4);
}

TEST_CASE("scaling fit rejects short or non-monotone inputs") {
  std::vector<NoiseBudget> rows(2);
  rows[0].R = 1e-3;
  rows[0].sigma_BB = 1e-16;
  rows[1].R = 1e-2;
  rows[1].sigma_BB = 1e-17;
  CHECK_THROWS_AS(fit_scaling(rows, "sigma_BB", "R"), Error);

  NoiseBudget r;
  r.R = 1e-3;
  r.sigma_BB = 2e-16;
  rows.push_back(rows[0]);
  rows.insert(rows.begin() + 1, r);
  CHECK_THROWS_AS(fit_scaling(rows, "sigma_BB", "R"), Error);
}

TEST_CASE("budget rows are self-consistent and deterministic") {
  const auto cfg = fast_config();
  const auto rows = run_budget(cfg);
  REQUIRE(rows.size() == 2);
  const auto props = MaterialTable::load_file(cfg.material_path).properties_at(5.0, true);
  const auto& r = rows[0];
  CHECK(r.status == "ok");
  CHECK(r.T == 5.0);
  // The stored components recombine into the stored sigma_EO.
  CHECK(r.sigma_EO ==
        doctest::Approx(allan_eo(r.sigma_BB, r.sigma_dr_r, props.n, props.p11, props.p12,
                                 r.eo_mode))
            .epsilon(1e-12));
  // sigma_BB recomputes from the stored solve products.
  CHECK(r.sigma_BB ==
        doctest::Approx(allan_structural({r.U_bb, r.F_bb, r.R, r.T, props.phi})).epsilon(1e-12));

  // Byte-identical CSV across repeated runs.
  const auto rows2 = run_budget(cfg);
  CHECK(budget_csv_string(rows) == budget_csv_string(rows2));
}

TEST_CASE("a failing geometry is isolated to its own rows") {
  ScanConfig cfg = fast_config();
  // This rim arc closes below the requested half-thickness: meshing fails.
  cfg.geometries.push_back(ResonatorGeometry::disk(1e-4, 1.5e-4, 4e-4));
  const auto rows = run_budget(cfg);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].status == "ok");
  CHECK(rows[2].status.substr(0, 6) == "error:");
  CHECK(std::isnan(rows[2].sigma_BB));
  const std::string csv = budget_csv_string(rows);
  CHECK(csv.find("error:") != std::string::npos);
}

TEST_CASE("figure series land on disk with the thermorefractive dip") {
  ScanConfig cfg = fast_config();
  cfg.fig2_tmin = 20.0;
  cfg.fig2_tmax = 50.0;
  cfg.fig2_points = 7;
  cfg.out_dir = (std::filesystem::temp_directory_path() / "wgr_figdata").string();
  emit_figure_data(cfg);

  std::ifstream in(std::filesystem::path(cfg.out_dir) / "fig2_temperature.csv");
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "T_K,tau_s,sigma_TR,sigma_BB,sigma_EO");
  double t_min = 0, v_min = 1e99;
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++rows;
    double T, tau, tr, bb, eo;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &T, &tau, &tr, &bb, &eo) == 5);
    if (tr < v_min) {
      v_min = tr;
      t_min = T;
    }
  }
  CHECK(rows == 8);  // requested grid plus the forced 33 K sample
  CHECK(t_min == doctest::Approx(33.0));
  CHECK(v_min == 0.0);
  // No disks in this config, so no size-series files.
  CHECK(!std::filesystem::exists(std::filesystem::path(cfg.out_dir) / "fig3_radius.csv"));
}

TEST_CASE("csv carries the eo mode and Gamma on every row") {
  ScanConfig cfg = fast_config();
  cfg.eo_mode = EoCombination::LinearSum;
  cfg.gamma_tr = 0.9;
  const auto csv = budget_csv_string(run_budget(cfg));
  CHECK(csv.find("eo_mode") != std::string::npos);
  CHECK(csv.find(",linear,9.00000e-01,ok") != std::string::npos);
}
