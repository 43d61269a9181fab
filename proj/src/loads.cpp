#include "wgrnoise/loads.hpp"

#include <cmath>
#include <numbers>

#include "wgrnoise/errors.hpp"

namespace wgr {

double LoadSpec::bb_analytic_force(double R) const {
  return 2.0 * std::pow(std::numbers::pi, 1.5) * amplitude * R * w_z;
}

LoadSpec bb_surface_load(const ModeProfile& profile, double A) {
  if (!(A > 0)) throw Error("bb_surface_load: amplitude must be positive");
  if (!(profile.w_z > 0)) throw Error("bb_surface_load: profile w_z must be positive");
  LoadSpec l;
  l.kind = LoadSpec::Kind::BbSurface;
  l.amplitude = A;
  l.w_z = profile.w_z;
  return l;
}

LoadSpec eo_volumetric_load(const ModeProfile& profile, double Sigma0) {
  if (!(Sigma0 > 0)) throw Error("eo_volumetric_load: amplitude must be positive");
  if (!(profile.w_z > 0 && profile.w_rho > 0 && profile.rho0 > 0))
    throw Error("eo_volumetric_load: profile widths and rho0 must be positive");
  LoadSpec l;
  l.kind = LoadSpec::Kind::EoVolumetric;
  l.amplitude = Sigma0;
  l.w_z = profile.w_z;
  l.w_rho = profile.w_rho;
  l.rho0 = profile.rho0;
  return l;
}

LoadSpec uniform_pressure_load(double P) {
  if (!(P > 0)) throw Error("uniform_pressure_load: pressure must be positive");
  LoadSpec l;
  l.kind = LoadSpec::Kind::UniformPressure;
  l.amplitude = P;
  return l;
}

}  // namespace wgr
