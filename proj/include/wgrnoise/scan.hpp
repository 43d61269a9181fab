#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wgrnoise/materials.hpp"
#include "wgrnoise/mesh.hpp"
#include "wgrnoise/modes.hpp"
#include "wgrnoise/noise.hpp"

namespace wgr {

/// Mode parameters supplied from a table file for one geometry.
struct SuppliedMode {
  Shape shape = Shape::Sphere;
  double R = 0, S = 0;
  int m = 0;
  double nu = 0, w_z = 0, w_rho = 0, rho0 = 0;
};

std::vector<SuppliedMode> load_mode_table(const std::string& path);
std::optional<SuppliedMode> find_supplied_mode(const std::vector<SuppliedMode>& table,
                                               const ResonatorGeometry& geom);

enum class ModeSource { Estimate, Supplied };

struct ScanConfig {
  std::string material_path;
  std::string mode_table_path;
  std::vector<ResonatorGeometry> geometries;
  std::vector<double> temperatures;  // K
  std::vector<double> taus{1.0};     // s
  ModeSource mode_source = ModeSource::Supplied;
  double lambda = 1.565e-6;
  RefinementSpec refine;
  EoCombination eo_mode = EoCombination::NeglectDR;
  double gamma_tr = 0.847;
  int threads = 1;
  double bb_amplitude = 1e6;   // Pa
  double eo_amplitude = 1e6;   // N/m^3
  std::string out_dir = ".";

  // figdata series controls
  double fig2_tmin = 5.5, fig2_tmax = 300.0;
  int fig2_points = 61;

  void validate() const;
};

ScanConfig load_scan_config(const std::string& path);

/// One (geometry, temperature, tau) cell of a noise budget.
struct NoiseBudget {
  std::string geometry_id;
  Shape shape = Shape::Sphere;
  double R = 0, S = 0, thickness = 0;
  double T = 0, tau = 0;
  double sigma_TR = 0, sigma_BB = 0, sigma_dr_r = 0, sigma_EO = 0;
  double U_bb = 0, F_bb = 0, U_eo = 0, F_eo = 0;
  double minor_r = 0;
  double gamma_tr = 0;
  EoCombination eo_mode = EoCombination::NeglectDR;
  std::string status = "ok";
};

/// Runs the full budget: one FEM pair (boundary and volumetric load) per
/// geometry, then one row per (geometry, T, tau).  Geometries are solved in
/// parallel; rows are merged by index so output is deterministic for any
/// thread count.  A failed solve marks its rows with an error status without
/// aborting the scan.
std::vector<NoiseBudget> run_budget(const ScanConfig& config);

void write_budget_csv(std::ostream& out, const std::vector<NoiseBudget>& rows);
std::string budget_csv_string(const std::vector<NoiseBudget>& rows);

struct ScalingFit {
  std::string quantity;
  std::string variable;
  double exponent = 0;
  double residual = 0;
  std::size_t points = 0;
};

/// Least-squares slope of log(quantity) against log(variable) over the given
/// rows.  Requires at least three rows with the variable strictly monotone.
ScalingFit fit_scaling(const std::vector<NoiseBudget>& rows, const std::string& quantity,
                       const std::string& variable);

/// Writes fig2_temperature.csv (T sweep for the first sphere geometry) and
/// fig3_radius.csv / fig3_curvature.csv (disk sweeps at 5.5 K) under
/// config.out_dir.
void emit_figure_data(const ScanConfig& config);

}  // namespace wgr
