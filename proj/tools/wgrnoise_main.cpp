// Batch front-end for the whispering-gallery thermal-noise library: single
// mode/strain/budget queries, full parameter scans to CSV, figure-series
// export and the self-validation oracle suite.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "wgrnoise/errors.hpp"
#include "wgrnoise/loads.hpp"
#include "wgrnoise/scan.hpp"
#include "wgrnoise/solver.hpp"
#include "wgrnoise/validate.hpp"

namespace fs = std::filesystem;
using namespace wgr;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitValidation = 2;
constexpr int kExitPartialScan = 3;

struct GlobalOptions {
  std::string data_dir = "data";
  std::string material_path;
  std::string mode_table_path;
  std::string config_path;
  std::string out_dir = ".";
  int refine = 1;
  std::string eo_mode = "neglect_dR";
  double gamma_tr = 0.847;
  int threads = 2;

  std::string material() const {
    return material_path.empty() ? (fs::path(data_dir) / "caf2.mat").string() : material_path;
  }
  std::string mode_table() const {
    return mode_table_path.empty() ? (fs::path(data_dir) / "caf2_modes.tbl").string()
                                   : mode_table_path;
  }
};

struct GeometryOptions {
  std::string shape = "sphere";
  double radius = 1e-3;
  double curvature = 1.5e-4;
  double thickness = 0;

  ResonatorGeometry build() const {
    if (shape == "sphere") return ResonatorGeometry::sphere(radius);
    if (shape == "disk") return ResonatorGeometry::disk(radius, curvature, thickness);
    throw ConfigError("unknown shape '" + shape + "'");
  }
};

void add_geometry_flags(CLI::App* cmd, GeometryOptions& g) {
  cmd->add_option("--shape", g.shape, "sphere or disk")->check(CLI::IsMember({"sphere", "disk"}));
  cmd->add_option("--radius", g.radius, "major radius R in m")->required();
  cmd->add_option("--curvature", g.curvature, "disk surface radius of curvature S in m");
  cmd->add_option("--thickness", g.thickness, "disk thickness in m (default R)");
}

ModeProfile resolve_mode(const GlobalOptions& opt, const ResonatorGeometry& geom,
                         const std::string& mode_source, double lambda) {
  const MaterialTable material = MaterialTable::load_file(opt.material());
  const double n = material.property_at("n", 300.0, true);
  if (mode_source == "supplied") {
    const auto table = load_mode_table(opt.mode_table());
    if (const auto m = find_supplied_mode(table, geom))
      return mode_from_parameters(geom, m->nu, m->m, m->w_z, m->w_rho, m->rho0,
                                  speed_of_light / m->nu, n);
    throw ConfigError("no supplied mode for this geometry; use --mode-source estimate");
  }
  return estimate_fundamental_mode(geom, lambda, n);
}

void print_profile(const ModeProfile& p) {
  std::printf("m          %d\n", p.m);
  std::printf("nu_Hz      %.6e\n", p.nu);
  std::printf("lambda_m   %.6e\n", p.lambda);
  std::printf("w_z_m      %.6e\n", p.w_z);
  std::printf("w_rho_m    %.6e\n", p.w_rho);
  std::printf("rho0_m     %.6e\n", p.rho0);
  const auto mr = minor_radius(p);
  std::printf("minor_r_m  %.6e\n", mr.r);
  std::printf("V_m_m3     %.6e\n", mr.V_m);
  std::printf("source     %s\n", p.source == ModeProfile::Source::Supplied ? "supplied" : "estimated");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thermal-noise floor of crystalline whispering-gallery resonators"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opt;
  app.add_option("--data", opt.data_dir, "directory with bundled material/mode files");
  app.add_option("--material", opt.material_path, "material file");
  app.add_option("--mode-table", opt.mode_table_path, "mode parameter table");
  app.add_option("--config", opt.config_path, "scan configuration file");
  app.add_option("--out", opt.out_dir, "output directory");
  app.add_option("--refine", opt.refine, "FEM refinement level (>=1)");
  app.add_option("--eo-mode", opt.eo_mode, "EO combination: neglect_dR|linear|quadrature");
  app.add_option("--gamma", opt.gamma_tr, "thermorefractive Gamma constant");
  app.add_option("--threads", opt.threads, "worker threads for scans");

  GeometryOptions geom_opt;
  std::string mode_source = "supplied";
  double lambda = 1.565e-6;
  double temperature = 5.0, tau = 1.0;
  std::string load_kind = "bb";
  double amplitude = 1e6;
  std::string export_path;
  bool quick = false;

  auto* cmd_mode = app.add_subcommand("mode", "print the fundamental mode profile");
  add_geometry_flags(cmd_mode, geom_opt);
  cmd_mode->add_option("--mode-source", mode_source, "supplied|estimate");
  cmd_mode->add_option("--lambda", lambda, "vacuum wavelength in m");

  auto* cmd_strain = app.add_subcommand("strain", "run one elastostatic solve and print U and F");
  add_geometry_flags(cmd_strain, geom_opt);
  cmd_strain->add_option("--mode-source", mode_source, "supplied|estimate");
  cmd_strain->add_option("--lambda", lambda, "vacuum wavelength in m");
  cmd_strain->add_option("--load", load_kind, "bb|eo|uniform")
      ->check(CLI::IsMember({"bb", "eo", "uniform"}));
  cmd_strain->add_option("--amplitude", amplitude, "load amplitude (Pa or N/m^3)");
  cmd_strain->add_option("--export", export_path, "write mesh and displacement field to a file");

  auto* cmd_budget = app.add_subcommand("budget", "single noise budget for one geometry");
  add_geometry_flags(cmd_budget, geom_opt);
  cmd_budget->add_option("--mode-source", mode_source, "supplied|estimate");
  cmd_budget->add_option("--lambda", lambda, "vacuum wavelength in m");
  cmd_budget->add_option("--temperature", temperature, "temperature in K")->required();
  cmd_budget->add_option("--tau", tau, "averaging time in s");

  auto* cmd_scan = app.add_subcommand("scan", "full sweep from a config file to CSV");
  auto* cmd_figdata = app.add_subcommand("figdata", "temperature and size series to CSV");
  auto* cmd_validate = app.add_subcommand("validate", "run the oracle suite");
  cmd_validate->add_flag("--quick", quick, "small geometries only");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_mode->parsed()) {
      print_profile(resolve_mode(opt, geom_opt.build(), mode_source, lambda));
      return kExitOk;
    }

    if (cmd_strain->parsed()) {
      const auto geom = geom_opt.build();
      const auto profile = resolve_mode(opt, geom, mode_source, lambda);
      const MaterialTable material = MaterialTable::load_file(opt.material());
      const auto moduli = isotropic_moduli(material, 300.0, true);
      LoadSpec load;
      if (load_kind == "bb")
        load = bb_surface_load(profile, amplitude);
      else if (load_kind == "eo")
        load = eo_volumetric_load(profile, amplitude);
      else
        load = uniform_pressure_load(amplitude);
      RefinementSpec spec;
      spec.level = opt.refine;
      if (!export_path.empty()) {
        const Mesh mesh = build_mesh(geom, profile, spec);
        std::vector<double> u;
        const auto res = solve_static(mesh, moduli, load, {}, &u);
        std::ofstream out(export_path);
        export_field(out, mesh, u);
        std::printf("U_J %.6e\nF_N %.6e\ndofs %zu\nresidual %.3e\n", res.U, res.F, res.dofs,
                    res.residual_norm);
        std::printf("field written to %s\n", export_path.c_str());
        return kExitOk;
      }
      const auto res = solve_with_refinement(geom, profile, moduli, load, spec);
      std::printf("U_J %.6e\nF_N %.6e\ndofs %zu\nresidual %.3e\nenergy_error_est_J %.3e\n", res.U,
                  res.F, res.dofs, res.residual_norm, res.energy_error_est);
      if (res.truncated_support)
        std::printf("note: load support truncated by the boundary inside 3 half-widths\n");
      return kExitOk;
    }

    if (cmd_budget->parsed()) {
      ScanConfig cfg;
      cfg.material_path = opt.material();
      cfg.mode_table_path = opt.mode_table();
      cfg.geometries = {geom_opt.build()};
      cfg.temperatures = {temperature};
      cfg.taus = {tau};
      cfg.mode_source = mode_source == "estimate" ? ModeSource::Estimate : ModeSource::Supplied;
      cfg.lambda = lambda;
      cfg.refine.level = opt.refine;
      cfg.eo_mode = eo_combination_from_string(opt.eo_mode);
      cfg.gamma_tr = opt.gamma_tr;
      cfg.threads = 1;
      const auto rows = run_budget(cfg);
      const auto& r = rows.at(0);
      if (r.status != "ok") {
        std::fprintf(stderr, "budget failed: %s\n", r.status.c_str());
        return kExitConfig;
      }
      std::printf("geometry    %s\n", r.geometry_id.c_str());
      std::printf("T_K         %.6g\ntau_s       %.6g\n", r.T, r.tau);
      std::printf("sigma_TR    %.6e\nsigma_BB    %.6e\nsigma_dr_r  %.6e\nsigma_EO    %.6e\n",
                  r.sigma_TR, r.sigma_BB, r.sigma_dr_r, r.sigma_EO);
      std::printf("U_bb_J %.6e  F_bb_N %.6e\nU_eo_J %.6e  F_eo_N %.6e\n", r.U_bb, r.F_bb, r.U_eo,
                  r.F_eo);
      std::printf("eo_mode %s  gamma %.6g\n", to_string(r.eo_mode).c_str(), r.gamma_tr);
      return kExitOk;
    }

    if (cmd_scan->parsed() || cmd_figdata->parsed()) {
      if (opt.config_path.empty()) throw ConfigError("--config is required");
      ScanConfig cfg = load_scan_config(opt.config_path);
      if (cfg.material_path.empty()) cfg.material_path = opt.material();
      if (cfg.mode_table_path.empty()) cfg.mode_table_path = opt.mode_table();
      if (app.count("--out")) cfg.out_dir = opt.out_dir;
      if (app.count("--refine")) cfg.refine.level = opt.refine;
      if (app.count("--eo-mode")) cfg.eo_mode = eo_combination_from_string(opt.eo_mode);
      if (app.count("--gamma")) cfg.gamma_tr = opt.gamma_tr;
      if (app.count("--threads")) cfg.threads = opt.threads;

      if (cmd_figdata->parsed()) {
        emit_figure_data(cfg);
        std::printf("figure series written under %s\n", cfg.out_dir.c_str());
        return kExitOk;
      }

      const auto rows = run_budget(cfg);
      fs::create_directories(cfg.out_dir);
      const auto csv_path = fs::path(cfg.out_dir) / "budget.csv";
      std::ofstream out(csv_path);
      write_budget_csv(out, rows);
      std::size_t failed = 0;
      for (const auto& r : rows)
        if (r.status != "ok") ++failed;
      std::printf("%zu rows (%zu failed) -> %s\n", rows.size(), failed, csv_path.string().c_str());
      return failed == 0 ? kExitOk : kExitPartialScan;
    }

    if (cmd_validate->parsed()) {
      ValidationOptions vopt;
      vopt.material_path = opt.material();
      vopt.mode_table_path = opt.mode_table();
      vopt.level = opt.refine;
      vopt.quick = quick;
      const auto report = run_validation(vopt);
      print_report(std::cout, report);
      return report.all_pass() ? kExitOk : kExitValidation;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
