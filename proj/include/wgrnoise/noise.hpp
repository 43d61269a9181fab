#pragma once

#include <string>

#include "wgrnoise/materials.hpp"

namespace wgr {

inline constexpr double k_boltzmann = 1.380649e-23;  // J/K

/// Inputs of one fluctuation-dissipation evaluation: strain energy U and
/// conjugate total force F from an elastostatic solve, the coordinate
/// normalizer x_scale (R for the boundary readout, the mode minor radius r
/// for the pinch readout), temperature and loss angle.
struct FdtInput {
  double U = 0;        // J
  double F = 0;        // N
  double x_scale = 0;  // m
  double T = 0;        // K
  double phi = 0;      // loss angle
};

/// One-sided spectral density of relative fluctuations at frequency f:
/// (4/pi) k_B T U phi / (x^2 f F^2).  Exact 1/f spectrum.
double fdt_psd(const FdtInput& in, double f);

/// Allan deviation for the structural-damping 1/f spectrum:
/// sqrt(8 ln2 / pi) sqrt(k_B T U phi) / (x F).  Independent of averaging time.
double allan_structural(const FdtInput& in);

enum class EoCombination { NeglectDR, LinearSum, QuadratureSum };

std::string to_string(EoCombination mode);
EoCombination eo_combination_from_string(const std::string& name);

/// Elasto-optic Allan deviation from the boundary and pinch components:
/// (1/2 sigma_dR + sigma_dr) (p11 + 2 p12)/3 n^2, with the combination of the
/// two terms selectable.  The default drops the boundary term, which is an
/// order of magnitude or more below the pinch term for the sizes of interest.
double allan_eo(double sigma_dR_over_R, double sigma_dr_over_r, double n, double p11, double p12,
                EoCombination mode = EoCombination::NeglectDR);

/// Thermorefractive Allan deviation
/// (2T/pi) sqrt(k_B Gamma / (gamma R tau)) |(1/n) dn/dT|; scales as tau^{-1/2}.
double allan_tr(double R, double T, const MaterialProperties& props, double Gamma, double tau);

/// Closed-form Brownian-boundary estimate for a sphere under uniform surface
/// pressure, [(2/3) ln2 / pi]^{1/2} sqrt(k_B T phi / (kappa R^3)).
double estimate_bb_sphere(double R, double T, double phi, double kappa);

/// Mode-tube minor radius 0.335 (lambda/n)^{7/12} R^{5/12}.
double estimate_tube_minor_radius(double R, double lambda, double n);

/// Plane-strain tube estimate of the pinch Allan deviation,
/// 0.55 (n/lambda)^{7/12} R^{-11/12} sqrt(k_B T phi / (3 kappa + G)).
double estimate_eo_dr_over_r(double R, double lambda, double n, double T, double phi, double kappa,
                             double G);

/// Closed-form elasto-optic estimate: the tube pinch deviation times
/// (p11 + 2 p12)/3 n^2.
double estimate_eo(double R, double lambda, double n, double T, double phi, double kappa, double G,
                   double p11, double p12);

}  // namespace wgr
