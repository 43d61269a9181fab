#include "wgrnoise/noise.hpp"

#include <cmath>
#include <numbers>

#include "wgrnoise/errors.hpp"

namespace wgr {

namespace {

constexpr double kPi = std::numbers::pi;

void check_fdt_input(const FdtInput& in) {
  if (!(in.U >= 0 && in.phi >= 0 && in.T >= 0))
    throw Error("fdt input: U, T and phi must be nonnegative");
  if (!(in.F > 0 && in.x_scale > 0)) throw Error("fdt input: F and x_scale must be positive");
}

}  // namespace

double fdt_psd(const FdtInput& in, double f) {
  check_fdt_input(in);
  if (!(f > 0)) throw Error("fdt_psd: frequency must be positive");
  return (4.0 / kPi) * k_boltzmann * in.T * in.U * in.phi /
         (in.x_scale * in.x_scale * f * in.F * in.F);
}

double allan_structural(const FdtInput& in) {
  check_fdt_input(in);
  return std::sqrt(8.0 * std::numbers::ln2 / kPi) *
         std::sqrt(k_boltzmann * in.T * in.U * in.phi) / (in.x_scale * in.F);
}

std::string to_string(EoCombination mode) {
  switch (mode) {
    case EoCombination::NeglectDR: return "neglect_dR";
    case EoCombination::LinearSum: return "linear";
    case EoCombination::QuadratureSum: return "quadrature";
  }
  return "neglect_dR";
}

EoCombination eo_combination_from_string(const std::string& name) {
  if (name == "neglect_dR") return EoCombination::NeglectDR;
  if (name == "linear") return EoCombination::LinearSum;
  if (name == "quadrature") return EoCombination::QuadratureSum;
  throw ConfigError("unknown EO combination mode '" + name + "'");
}

double allan_eo(double sigma_dR_over_R, double sigma_dr_over_r, double n, double p11, double p12,
                EoCombination mode) {
  if (sigma_dR_over_R < 0 || sigma_dr_over_r < 0) throw Error("allan_eo: sigmas must be nonnegative");
  const double half_dR = 0.5 * sigma_dR_over_R;
  double combined = 0;
  switch (mode) {
    case EoCombination::NeglectDR: combined = sigma_dr_over_r; break;
    case EoCombination::LinearSum: combined = half_dR + sigma_dr_over_r; break;
    case EoCombination::QuadratureSum:
      combined = std::sqrt(half_dR * half_dR + sigma_dr_over_r * sigma_dr_over_r);
      break;
  }
  return combined * (p11 + 2.0 * p12) / 3.0 * n * n;
}

double allan_tr(double R, double T, const MaterialProperties& props, double Gamma, double tau) {
  if (!(R > 0 && T > 0 && tau > 0 && Gamma > 0)) throw Error("allan_tr: inputs must be positive");
  if (!(props.gamma > 0)) throw Error("allan_tr: thermal conductivity must be positive");
  return (2.0 * T / kPi) * std::sqrt(k_boltzmann * Gamma / (props.gamma * R * tau)) *
         std::abs(props.dn_dT_over_n);
}

double estimate_bb_sphere(double R, double T, double phi, double kappa) {
  if (!(R > 0 && T > 0 && phi >= 0 && kappa > 0))
    throw Error("estimate_bb_sphere: inputs must be positive");
  return std::sqrt((2.0 / 3.0) * std::numbers::ln2 / kPi) *
         std::sqrt(k_boltzmann * T * phi / (kappa * R * R * R));
}

double estimate_tube_minor_radius(double R, double lambda, double n) {
  if (!(R > 0 && lambda > 0 && n > 0))
    throw Error("estimate_tube_minor_radius: inputs must be positive");
  return 0.335 * std::pow(lambda / n, 7.0 / 12.0) * std::pow(R, 5.0 / 12.0);
}

double estimate_eo_dr_over_r(double R, double lambda, double n, double T, double phi, double kappa,
                             double G) {
  if (!(R > 0 && lambda > 0 && n > 0 && T > 0 && phi >= 0 && kappa > 0 && G >= 0))
    throw Error("estimate_eo_dr_over_r: inputs must be positive");
  return 0.55 * std::pow(n / lambda, 7.0 / 12.0) * std::pow(R, -11.0 / 12.0) *
         std::sqrt(k_boltzmann * T * phi / (3.0 * kappa + G));
}

double estimate_eo(double R, double lambda, double n, double T, double phi, double kappa, double G,
                   double p11, double p12) {
  return estimate_eo_dr_over_r(R, lambda, n, T, phi, kappa, G) * (p11 + 2.0 * p12) / 3.0 * n * n;
}

}  // namespace wgr
