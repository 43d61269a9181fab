#pragma once

#include "wgrnoise/modes.hpp"

namespace wgr {

/// One of the three load types applied to the resonator cross-section.
///   BbSurface:       outward-normal traction A exp(-(s/w_z)^2) along the
///                    surface arc coordinate s from the equator [Pa].
///   EoVolumetric:    body-force density of amplitude Sigma0 [N/m^3] directed
///                    toward the mode center with Gaussian 1/e weight
///                    exp(-((rho-rho0)/w_rho)^2 - (z/w_z)^2).
///   UniformPressure: inward pressure P over the whole outer surface [Pa].
struct LoadSpec {
  enum class Kind { BbSurface, EoVolumetric, UniformPressure };
  Kind kind = Kind::UniformPressure;
  double amplitude = 0;
  double w_z = 0, w_rho = 0, rho0 = 0;

  /// Closed-form conjugate force of the BB load, 2 pi^{3/2} A R w_z.
  double bb_analytic_force(double R) const;
};

LoadSpec bb_surface_load(const ModeProfile& profile, double A);
LoadSpec eo_volumetric_load(const ModeProfile& profile, double Sigma0);
LoadSpec uniform_pressure_load(double P);

}  // namespace wgr
