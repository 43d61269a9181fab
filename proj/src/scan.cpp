#include "wgrnoise/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "wgrnoise/errors.hpp"
#include "wgrnoise/loads.hpp"
#include "wgrnoise/solver.hpp"
#include "wgrnoise/textfile.hpp"

namespace wgr {

namespace fs = std::filesystem;

namespace {

std::string format_si(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

std::string geometry_id(const ResonatorGeometry& g) {
  std::string id = to_string(g.shape) + "_R" + format_si(g.R);
  if (g.shape == Shape::Disk) id += "_S" + format_si(g.S);
  return id;
}

bool close_rel(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b)); }

/// FEM products of one geometry, shared by every (T, tau) row.
struct GeometrySolution {
  double U_bb = 0, F_bb = 0, U_eo = 0, F_eo = 0;
  double minor_r = 0;
  std::string status = "ok";
};

GeometrySolution solve_geometry(const ScanConfig& cfg, const MaterialTable& material,
                                const std::vector<SuppliedMode>& mode_table,
                                const ResonatorGeometry& geom) {
  GeometrySolution out;
  try {
    const double n = material.property_at("n", 300.0, true);
    ModeProfile profile;
    if (cfg.mode_source == ModeSource::Supplied) {
      const auto supplied = find_supplied_mode(mode_table, geom);
      if (!supplied)
        throw ConfigError("no supplied mode for geometry " + geometry_id(geom) +
                          " in the mode table");
      const double lambda = speed_of_light / supplied->nu;
      profile = mode_from_parameters(geom, supplied->nu, supplied->m, supplied->w_z,
                                     supplied->w_rho, supplied->rho0, lambda, n);
    } else {
      profile = estimate_fundamental_mode(geom, cfg.lambda, n);
    }
    // Elastic constants are temperature-independent in the material table;
    // the FEM pair is therefore shared by all temperatures.
    const IsotropicModuli moduli = isotropic_moduli(material, 300.0, true);
    const auto bb = solve_with_refinement(geom, profile, moduli, bb_surface_load(profile, cfg.bb_amplitude),
                                          cfg.refine);
    const auto eo = solve_with_refinement(geom, profile, moduli,
                                          eo_volumetric_load(profile, cfg.eo_amplitude), cfg.refine);
    out.U_bb = bb.U;
    out.F_bb = bb.F;
    out.U_eo = eo.U;
    out.F_eo = eo.F;
    out.minor_r = minor_radius(profile).r;
  } catch (const std::exception& e) {
    out.status = std::string("error:") + e.what();
  }
  return out;
}

}  // namespace

std::vector<SuppliedMode> load_mode_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open mode table '" + path + "'");
  std::vector<SuppliedMode> table;
  for (const auto& line : read_text_lines(in)) {
    const auto& tok = line.tokens;
    if (tok[0] != "mode")
      throw ParseError(path, line.number, "expected 'mode <shape> <R> <S> <m> <nu> <w_z> <w_rho> <rho0>'");
    if (tok.size() != 9)
      throw ParseError(path, line.number, "mode line expects 8 fields after the keyword");
    SuppliedMode m;
    if (tok[1] == "sphere")
      m.shape = Shape::Sphere;
    else if (tok[1] == "disk")
      m.shape = Shape::Disk;
    else
      throw ParseError(path, line.number, "unknown shape '" + tok[1] + "'");
    m.R = to_number(tok[2], path, line.number);
    m.S = to_number(tok[3], path, line.number);
    m.m = static_cast<int>(to_integer(tok[4], path, line.number));
    m.nu = to_number(tok[5], path, line.number);
    m.w_z = to_number(tok[6], path, line.number);
    m.w_rho = to_number(tok[7], path, line.number);
    m.rho0 = to_number(tok[8], path, line.number);
    table.push_back(m);
  }
  return table;
}

std::optional<SuppliedMode> find_supplied_mode(const std::vector<SuppliedMode>& table,
                                               const ResonatorGeometry& geom) {
  for (const auto& m : table) {
    if (m.shape != geom.shape || !close_rel(m.R, geom.R)) continue;
    if (geom.shape == Shape::Disk && !close_rel(m.S, geom.S)) continue;
    return m;
  }
  return std::nullopt;
}

void ScanConfig::validate() const {
  if (geometries.empty()) throw ConfigError("config: geometry list is empty");
  if (temperatures.empty()) throw ConfigError("config: temperature list is empty");
  if (taus.empty()) throw ConfigError("config: tau list is empty");
  for (double T : temperatures)
    if (!(T > 0)) throw ConfigError("config: temperatures must be positive");
  for (double t : taus)
    if (!(t > 0)) throw ConfigError("config: taus must be positive");
  if (!(lambda > 0)) throw ConfigError("config: lambda must be positive");
  if (!(gamma_tr > 0)) throw ConfigError("config: gamma_tr must be positive");
  if (threads < 1) throw ConfigError("config: threads must be at least 1");
  if (!(bb_amplitude > 0 && eo_amplitude > 0)) throw ConfigError("config: amplitudes must be positive");
  if (material_path.empty()) throw ConfigError("config: material file not set");
  if (!fs::exists(material_path)) throw ConfigError("config: material file '" + material_path + "' does not exist");
}

ScanConfig load_scan_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  const fs::path base = fs::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    return fs::path(p).is_absolute() ? p : (base / p).string();
  };

  ScanConfig cfg;
  for (const auto& line : read_text_lines(in)) {
    const auto& tok = line.tokens;
    const auto need = [&](std::size_t n) {
      if (tok.size() != n + 1)
        throw ParseError(path, line.number, "'" + tok[0] + "' expects " + std::to_string(n) + " argument(s)");
    };
    if (tok[0] == "material") {
      need(1);
      cfg.material_path = resolve(tok[1]);
    } else if (tok[0] == "mode_table") {
      need(1);
      cfg.mode_table_path = resolve(tok[1]);
    } else if (tok[0] == "geometry") {
      if (tok.size() < 3) throw ParseError(path, line.number, "geometry expects a shape and a radius");
      if (tok[1] == "sphere") {
        need(2);
        cfg.geometries.push_back(ResonatorGeometry::sphere(to_number(tok[2], path, line.number)));
      } else if (tok[1] == "disk") {
        if (tok.size() != 4 && tok.size() != 5)
          throw ParseError(path, line.number, "geometry disk expects '<R> <S> [thickness]'");
        const double R = to_number(tok[2], path, line.number);
        const double S = to_number(tok[3], path, line.number);
        const double t = tok.size() == 5 ? to_number(tok[4], path, line.number) : 0.0;
        cfg.geometries.push_back(ResonatorGeometry::disk(R, S, t));
      } else {
        throw ParseError(path, line.number, "unknown shape '" + tok[1] + "'");
      }
    } else if (tok[0] == "temperatures") {
      for (std::size_t i = 1; i < tok.size(); ++i)
        cfg.temperatures.push_back(to_number(tok[i], path, line.number));
    } else if (tok[0] == "taus") {
      cfg.taus.clear();
      for (std::size_t i = 1; i < tok.size(); ++i)
        cfg.taus.push_back(to_number(tok[i], path, line.number));
    } else if (tok[0] == "mode_source") {
      need(1);
      if (tok[1] == "estimate")
        cfg.mode_source = ModeSource::Estimate;
      else if (tok[1] == "supplied")
        cfg.mode_source = ModeSource::Supplied;
      else
        throw ParseError(path, line.number, "mode_source must be 'estimate' or 'supplied'");
    } else if (tok[0] == "lambda") {
      need(1);
      cfg.lambda = to_number(tok[1], path, line.number);
    } else if (tok[0] == "refine") {
      need(1);
      cfg.refine.level = static_cast<int>(to_integer(tok[1], path, line.number));
    } else if (tok[0] == "eo_mode") {
      need(1);
      cfg.eo_mode = eo_combination_from_string(tok[1]);
    } else if (tok[0] == "gamma_tr") {
      need(1);
      cfg.gamma_tr = to_number(tok[1], path, line.number);
    } else if (tok[0] == "threads") {
      need(1);
      cfg.threads = static_cast<int>(to_integer(tok[1], path, line.number));
    } else if (tok[0] == "bb_amplitude") {
      need(1);
      cfg.bb_amplitude = to_number(tok[1], path, line.number);
    } else if (tok[0] == "eo_amplitude") {
      need(1);
      cfg.eo_amplitude = to_number(tok[1], path, line.number);
    } else if (tok[0] == "out") {
      need(1);
      cfg.out_dir = tok[1];
    } else if (tok[0] == "fig2_trange") {
      need(3);
      cfg.fig2_tmin = to_number(tok[1], path, line.number);
      cfg.fig2_tmax = to_number(tok[2], path, line.number);
      cfg.fig2_points = static_cast<int>(to_integer(tok[3], path, line.number));
    } else {
      throw ParseError(path, line.number, "unknown config keyword '" + tok[0] + "'");
    }
  }
  return cfg;
}

std::vector<NoiseBudget> run_budget(const ScanConfig& config) {
  config.validate();
  const MaterialTable material = MaterialTable::load_file(config.material_path);
  std::vector<SuppliedMode> mode_table;
  if (!config.mode_table_path.empty()) mode_table = load_mode_table(config.mode_table_path);
  if (config.mode_source == ModeSource::Supplied && mode_table.empty())
    throw ConfigError("mode_source is 'supplied' but no mode_table was given");

  // One FEM pair per geometry, solved by a small worker pool.  Each cell is
  // independent and internally serial, so results do not depend on the
  // number of workers.
  std::vector<GeometrySolution> solutions(config.geometries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= config.geometries.size()) return;
      solutions[i] = solve_geometry(config, material, mode_table, config.geometries[i]);
    }
  };
  const int n_threads = std::max(1, std::min<int>(config.threads, config.geometries.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<NoiseBudget> rows;
  for (std::size_t gi = 0; gi < config.geometries.size(); ++gi) {
    const auto& geom = config.geometries[gi];
    const auto& sol = solutions[gi];
    for (double T : config.temperatures) {
      // Sampled property ranges end at 5.5 K / 300 K; budget evaluation
      // clamps so the tabulated endpoints serve nearby temperatures.
      const MaterialProperties props = material.properties_at(T, true);
      for (double tau : config.taus) {
        NoiseBudget row;
        row.geometry_id = geometry_id(geom);
        row.shape = geom.shape;
        row.R = geom.R;
        row.S = geom.S;
        row.thickness = geom.thickness;
        row.T = T;
        row.tau = tau;
        row.gamma_tr = config.gamma_tr;
        row.eo_mode = config.eo_mode;
        row.status = sol.status;
        if (sol.status == "ok") {
          row.U_bb = sol.U_bb;
          row.F_bb = sol.F_bb;
          row.U_eo = sol.U_eo;
          row.F_eo = sol.F_eo;
          row.minor_r = sol.minor_r;
          row.sigma_TR = allan_tr(geom.R, T, props, config.gamma_tr, tau);
          row.sigma_BB = allan_structural({sol.U_bb, sol.F_bb, geom.R, T, props.phi});
          row.sigma_dr_r = allan_structural({sol.U_eo, sol.F_eo, sol.minor_r, T, props.phi});
          row.sigma_EO = allan_eo(row.sigma_BB, row.sigma_dr_r, props.n, props.p11, props.p12,
                                  config.eo_mode);
        } else {
          row.sigma_TR = row.sigma_BB = row.sigma_dr_r = row.sigma_EO = std::nan("");
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_budget_csv(std::ostream& out, const std::vector<NoiseBudget>& rows) {
  out << "shape,R_m,S_m,T_K,tau_s,sigma_TR,sigma_BB,sigma_dr_r,sigma_EO,"
         "U_bb_J,F_bb_N,U_eo_J,F_eo_N,eo_mode,gamma,status\n";
  for (const auto& r : rows) {
    out << to_string(r.shape) << ',' << format_si(r.R) << ',' << format_si(r.S) << ','
        << format_si(r.T) << ',' << format_si(r.tau) << ',' << format_si(r.sigma_TR) << ','
        << format_si(r.sigma_BB) << ',' << format_si(r.sigma_dr_r) << ','
        << format_si(r.sigma_EO) << ',' << format_si(r.U_bb) << ',' << format_si(r.F_bb) << ','
        << format_si(r.U_eo) << ',' << format_si(r.F_eo) << ',' << to_string(r.eo_mode) << ','
        << format_si(r.gamma_tr) << ',' << r.status << '\n';
  }
}

std::string budget_csv_string(const std::vector<NoiseBudget>& rows) {
  std::ostringstream ss;
  write_budget_csv(ss, rows);
  return ss.str();
}

ScalingFit fit_scaling(const std::vector<NoiseBudget>& rows, const std::string& quantity,
                       const std::string& variable) {
  auto value_of = [&](const NoiseBudget& r) {
    if (quantity == "sigma_BB") return r.sigma_BB;
    if (quantity == "sigma_EO") return r.sigma_EO;
    if (quantity == "sigma_TR") return r.sigma_TR;
    if (quantity == "sigma_dr_r") return r.sigma_dr_r;
    throw Error("fit_scaling: unknown quantity '" + quantity + "'");
  };
  auto variable_of = [&](const NoiseBudget& r) {
    if (variable == "R") return r.R;
    if (variable == "S") return r.S;
    if (variable == "T") return r.T;
    if (variable == "tau") return r.tau;
    throw Error("fit_scaling: unknown variable '" + variable + "'");
  };

  std::vector<double> lx, ly;
  for (const auto& r : rows) {
    if (r.status != "ok") continue;
    const double x = variable_of(r), y = value_of(r);
    if (!(x > 0 && y > 0)) throw Error("fit_scaling: values must be positive for a log-log fit");
    lx.push_back(std::log(x));
    ly.push_back(std::log(y));
  }
  if (lx.size() < 3) throw Error("fit_scaling: need at least 3 rows");
  bool inc = true, dec = true;
  for (std::size_t i = 1; i < lx.size(); ++i) {
    inc = inc && lx[i] > lx[i - 1];
    dec = dec && lx[i] < lx[i - 1];
  }
  if (!inc && !dec) throw Error("fit_scaling: variable must be strictly monotone across rows");

  const std::size_t n = lx.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  ScalingFit fit;
  fit.quantity = quantity;
  fit.variable = variable;
  fit.exponent = sxy / sxx;
  fit.points = n;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pred = my + fit.exponent * (lx[i] - mx);
    ss += (ly[i] - pred) * (ly[i] - pred);
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

void emit_figure_data(const ScanConfig& config) {
  config.validate();
  fs::create_directories(config.out_dir);

  // Temperature sweep for the first sphere geometry (one FEM pair, since the
  // elastic solves are temperature-independent).
  auto sphere_it = std::find_if(config.geometries.begin(), config.geometries.end(),
                                [](const ResonatorGeometry& g) { return g.shape == Shape::Sphere; });
  if (sphere_it != config.geometries.end()) {
    ScanConfig one = config;
    one.geometries = {*sphere_it};
    one.temperatures.clear();
    const double ratio = std::pow(config.fig2_tmax / config.fig2_tmin,
                                  1.0 / std::max(1, config.fig2_points - 1));
    for (int i = 0; i < config.fig2_points; ++i)
      one.temperatures.push_back(config.fig2_tmin * std::pow(ratio, i));
    one.temperatures.push_back(33.0);  // land a sample at the dn/dT zero crossing
    std::sort(one.temperatures.begin(), one.temperatures.end());
    one.taus = {config.taus.front()};
    const auto rows = run_budget(one);
    std::ofstream out(fs::path(config.out_dir) / "fig2_temperature.csv");
    out << "T_K,tau_s,sigma_TR,sigma_BB,sigma_EO\n";
    for (const auto& r : rows)
      out << format_si(r.T) << ',' << format_si(r.tau) << ',' << format_si(r.sigma_TR) << ','
          << format_si(r.sigma_BB) << ',' << format_si(r.sigma_EO) << '\n';
  }

  // Size sweeps at the low-temperature endpoint.
  auto write_series = [&](const std::vector<ResonatorGeometry>& geoms, const std::string& file,
                          const std::string& var_name, auto var_of) {
    if (geoms.empty()) return;
    ScanConfig sub = config;
    sub.geometries = geoms;
    sub.temperatures = {config.fig2_tmin};
    sub.taus = {config.taus.front()};
    const auto rows = run_budget(sub);
    std::ofstream out(fs::path(config.out_dir) / file);
    out << var_name << ",sigma_BB,sigma_EO,status\n";
    for (const auto& r : rows)
      out << format_si(var_of(r)) << ',' << format_si(r.sigma_BB) << ',' << format_si(r.sigma_EO)
          << ',' << r.status << '\n';
  };

  // R series: disks sharing the most common S.  S series: disks sharing the
  // most common R.  A disk may belong to both.
  std::vector<ResonatorGeometry> disks;
  for (const auto& g : config.geometries)
    if (g.shape == Shape::Disk) disks.push_back(g);
  auto modal = [&](auto field) {
    double best = 0;
    std::size_t best_count = 0;
    for (const auto& g : disks) {
      std::size_t count = 0;
      for (const auto& o : disks)
        if (close_rel(field(o), field(g))) ++count;
      if (count > best_count) {
        best_count = count;
        best = field(g);
      }
    }
    return best;
  };
  std::vector<ResonatorGeometry> disks_by_R, disks_by_S;
  if (!disks.empty()) {
    const double s_mode = modal([](const ResonatorGeometry& g) { return g.S; });
    const double r_mode = modal([](const ResonatorGeometry& g) { return g.R; });
    for (const auto& g : disks) {
      if (close_rel(g.S, s_mode)) disks_by_R.push_back(g);
      if (close_rel(g.R, r_mode)) disks_by_S.push_back(g);
    }
    std::sort(disks_by_R.begin(), disks_by_R.end(),
              [](const auto& a, const auto& b) { return a.R < b.R; });
    std::sort(disks_by_S.begin(), disks_by_S.end(),
              [](const auto& a, const auto& b) { return a.S < b.S; });
  }
  write_series(disks_by_R, "fig3_radius.csv", "R_m",
               [](const NoiseBudget& r) { return r.R; });
  write_series(disks_by_S, "fig3_curvature.csv", "S_m",
               [](const NoiseBudget& r) { return r.S; });
}

}  // namespace wgr
