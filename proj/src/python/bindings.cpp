#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "wgrnoise/errors.hpp"
#include "wgrnoise/loads.hpp"
#include "wgrnoise/materials.hpp"
#include "wgrnoise/modes.hpp"
#include "wgrnoise/noise.hpp"
#include "wgrnoise/scan.hpp"
#include "wgrnoise/solver.hpp"
#include "wgrnoise/validate.hpp"

namespace py = pybind11;
using namespace wgr;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Thermal-noise floor of crystalline whispering-gallery resonators: "
            "material database, mode estimators, axisymmetric elastostatic FEM "
            "and the fluctuation-dissipation noise pipeline.";

  py::register_exception<Error>(m, "WgrError");

  py::class_<MaterialProperties>(m, "MaterialProperties")
      .def_readonly("n", &MaterialProperties::n)
      .def_readonly("C11", &MaterialProperties::C11)
      .def_readonly("C12", &MaterialProperties::C12)
      .def_readonly("C44", &MaterialProperties::C44)
      .def_readonly("gamma", &MaterialProperties::gamma)
      .def_readonly("dn_dT_over_n", &MaterialProperties::dn_dT_over_n)
      .def_readonly("phi", &MaterialProperties::phi)
      .def_readonly("p11", &MaterialProperties::p11)
      .def_readonly("p12", &MaterialProperties::p12)
      .def_readonly("p44", &MaterialProperties::p44)
      .def_readonly("alpha", &MaterialProperties::alpha);

  py::class_<IsotropicModuli>(m, "IsotropicModuli")
      .def_readonly("kappa", &IsotropicModuli::kappa)
      .def_readonly("G", &IsotropicModuli::G)
      .def_readonly("mu", &IsotropicModuli::mu);

  py::class_<MaterialTable>(m, "MaterialTable")
      .def_static("load_file", &MaterialTable::load_file, py::arg("path"))
      .def_property_readonly("name", &MaterialTable::name)
      .def("properties_at", &MaterialTable::properties_at, py::arg("T"), py::arg("clamp") = false)
      .def("property_at", &MaterialTable::property_at, py::arg("key"), py::arg("T"),
           py::arg("clamp") = false);

  m.def("load_material_table", &MaterialTable::load_file, py::arg("path"));
  m.def("isotropic_moduli", py::overload_cast<const MaterialProperties&>(&isotropic_moduli));
  m.def("isotropic_moduli_of", py::overload_cast<const MaterialTable&, double, bool>(&isotropic_moduli),
        py::arg("table"), py::arg("T"), py::arg("clamp") = false);

  py::enum_<Shape>(m, "Shape").value("sphere", Shape::Sphere).value("disk", Shape::Disk);
  py::enum_<Polarization>(m, "Polarization")
      .value("TE", Polarization::TE)
      .value("TM", Polarization::TM);

  py::class_<ResonatorGeometry>(m, "ResonatorGeometry")
      .def_static("sphere", &ResonatorGeometry::sphere, py::arg("R"))
      .def_static("disk", &ResonatorGeometry::disk, py::arg("R"), py::arg("S"),
                  py::arg("thickness") = 0.0)
      .def_readonly("shape", &ResonatorGeometry::shape)
      .def_readonly("R", &ResonatorGeometry::R)
      .def_readonly("S", &ResonatorGeometry::S)
      .def_readonly("thickness", &ResonatorGeometry::thickness);

  py::class_<ModeProfile>(m, "ModeProfile")
      .def_readonly("nu", &ModeProfile::nu)
      .def_readonly("m", &ModeProfile::m)
      .def_readonly("w_z", &ModeProfile::w_z)
      .def_readonly("w_rho", &ModeProfile::w_rho)
      .def_readonly("rho0", &ModeProfile::rho0)
      .def_readonly("lambda_", &ModeProfile::lambda);

  py::class_<ModeGeometrySummary>(m, "ModeGeometrySummary")
      .def_readonly("r", &ModeGeometrySummary::r)
      .def_readonly("V_m", &ModeGeometrySummary::V_m);

  m.def("wgm_frequency", &wgm_frequency, py::arg("m"), py::arg("R"), py::arg("n"),
        py::arg("polarization") = Polarization::TE);
  m.def(
      "estimate_fundamental_mode",
      [](const ResonatorGeometry& g, double lambda, double n) {
        return estimate_fundamental_mode(g, lambda, n);
      },
      py::arg("geometry"), py::arg("lambda_"), py::arg("n"));
  m.def("mode_from_parameters", &mode_from_parameters, py::arg("geometry"), py::arg("nu"),
        py::arg("m"), py::arg("w_z"), py::arg("w_rho"), py::arg("rho0"), py::arg("lambda_"),
        py::arg("n"));
  m.def("mode_volume", &mode_volume, py::arg("R"), py::arg("lambda_"), py::arg("n"));
  m.def("minor_radius", &minor_radius, py::arg("profile"));

  py::class_<LoadSpec>(m, "LoadSpec")
      .def_readonly("amplitude", &LoadSpec::amplitude)
      .def("bb_analytic_force", &LoadSpec::bb_analytic_force, py::arg("R"));
  m.def("bb_surface_load", &bb_surface_load, py::arg("profile"), py::arg("A"));
  m.def("eo_volumetric_load", &eo_volumetric_load, py::arg("profile"), py::arg("Sigma0"));
  m.def("uniform_pressure_load", &uniform_pressure_load, py::arg("P"));

  py::class_<StrainEnergyResult>(m, "StrainEnergyResult")
      .def_readonly("U", &StrainEnergyResult::U)
      .def_readonly("F", &StrainEnergyResult::F)
      .def_readonly("dofs", &StrainEnergyResult::dofs)
      .def_readonly("residual_norm", &StrainEnergyResult::residual_norm)
      .def_readonly("energy_error_est", &StrainEnergyResult::energy_error_est)
      .def_readonly("truncated_support", &StrainEnergyResult::truncated_support);

  m.def(
      "solve_strain",
      [](const ResonatorGeometry& geom, const ModeProfile& profile, const IsotropicModuli& moduli,
         const LoadSpec& load, int level, double energy_tol) {
        RefinementSpec spec;
        spec.level = level;
        py::gil_scoped_release release;
        return solve_with_refinement(geom, profile, moduli, load, spec, energy_tol);
      },
      py::arg("geometry"), py::arg("profile"), py::arg("moduli"), py::arg("load"),
      py::arg("level") = 1, py::arg("energy_tol") = 0.05,
      "Axisymmetric elastostatic solve with a two-level refinement estimate");

  m.def("analytic_uniform_sphere_energy", &analytic_uniform_sphere_energy, py::arg("P"),
        py::arg("R"), py::arg("kappa"));
  m.def("analytic_uniform_sphere_force", &analytic_uniform_sphere_force, py::arg("P"), py::arg("R"));
  py::class_<TubeResult>(m, "TubeResult")
      .def_readonly("U", &TubeResult::U)
      .def_readonly("F", &TubeResult::F)
      .def_readonly("sigma_zz", &TubeResult::sigma_zz);
  m.def("analytic_tube_energy", &analytic_tube_energy, py::arg("P"), py::arg("r"), py::arg("R"),
        py::arg("kappa"), py::arg("G"), py::arg("mu"));

  py::enum_<EoCombination>(m, "EoCombination")
      .value("neglect_dR", EoCombination::NeglectDR)
      .value("linear", EoCombination::LinearSum)
      .value("quadrature", EoCombination::QuadratureSum);

  py::class_<FdtInput>(m, "FdtInput")
      .def(py::init([](double U, double F, double x_scale, double T, double phi) {
             return FdtInput{U, F, x_scale, T, phi};
           }),
           py::arg("U"), py::arg("F"), py::arg("x_scale"), py::arg("T"), py::arg("phi"));
  m.def("fdt_psd", &fdt_psd, py::arg("input"), py::arg("f"));
  m.def("allan_structural", &allan_structural, py::arg("input"));
  m.def("allan_eo", &allan_eo, py::arg("sigma_dR_over_R"), py::arg("sigma_dr_over_r"), py::arg("n"),
        py::arg("p11"), py::arg("p12"), py::arg("mode") = EoCombination::NeglectDR);
  m.def("allan_tr", &allan_tr, py::arg("R"), py::arg("T"), py::arg("props"), py::arg("Gamma"),
        py::arg("tau"));
  m.def("estimate_bb_sphere", &estimate_bb_sphere, py::arg("R"), py::arg("T"), py::arg("phi"),
        py::arg("kappa"));
  m.def("estimate_tube_minor_radius", &estimate_tube_minor_radius, py::arg("R"), py::arg("lambda_"),
        py::arg("n"));
  m.def("estimate_eo_dr_over_r", &estimate_eo_dr_over_r, py::arg("R"), py::arg("lambda_"),
        py::arg("n"), py::arg("T"), py::arg("phi"), py::arg("kappa"), py::arg("G"));
  m.def("estimate_eo", &estimate_eo, py::arg("R"), py::arg("lambda_"), py::arg("n"), py::arg("T"),
        py::arg("phi"), py::arg("kappa"), py::arg("G"), py::arg("p11"), py::arg("p12"));

  py::class_<NoiseBudget>(m, "NoiseBudget")
      .def_readonly("geometry_id", &NoiseBudget::geometry_id)
      .def_readonly("R", &NoiseBudget::R)
      .def_readonly("S", &NoiseBudget::S)
      .def_readonly("T", &NoiseBudget::T)
      .def_readonly("tau", &NoiseBudget::tau)
      .def_readonly("sigma_TR", &NoiseBudget::sigma_TR)
      .def_readonly("sigma_BB", &NoiseBudget::sigma_BB)
      .def_readonly("sigma_dr_r", &NoiseBudget::sigma_dr_r)
      .def_readonly("sigma_EO", &NoiseBudget::sigma_EO)
      .def_readonly("U_bb", &NoiseBudget::U_bb)
      .def_readonly("F_bb", &NoiseBudget::F_bb)
      .def_readonly("U_eo", &NoiseBudget::U_eo)
      .def_readonly("F_eo", &NoiseBudget::F_eo)
      .def_readonly("status", &NoiseBudget::status);

  m.def(
      "run_budget_config",
      [](const std::string& config_path) {
        const ScanConfig cfg = load_scan_config(config_path);
        py::gil_scoped_release release;
        return run_budget(cfg);
      },
      py::arg("config_path"), "Run the scan described by a config file");

  py::class_<ScalingFit>(m, "ScalingFit")
      .def_readonly("quantity", &ScalingFit::quantity)
      .def_readonly("variable", &ScalingFit::variable)
      .def_readonly("exponent", &ScalingFit::exponent)
      .def_readonly("residual", &ScalingFit::residual)
      .def_readonly("points", &ScalingFit::points);
  m.def("fit_scaling", &fit_scaling, py::arg("rows"), py::arg("quantity"), py::arg("variable"));

  m.def(
      "validate",
      [](const std::string& material_path, const std::string& mode_table_path, bool quick) {
        ValidationOptions opt;
        opt.material_path = material_path;
        opt.mode_table_path = mode_table_path;
        opt.quick = quick;
        ValidationReport report;
        {
          py::gil_scoped_release release;
          report = run_validation(opt);
        }
        std::ostringstream ss;
        print_report(ss, report);
        return py::make_tuple(report.all_pass(), ss.str());
      },
      py::arg("material_path"), py::arg("mode_table_path"), py::arg("quick") = true,
      "Run the oracle suite; returns (all_pass, report_text)");

  m.attr("k_boltzmann") = k_boltzmann;
  m.attr("speed_of_light") = speed_of_light;
}
