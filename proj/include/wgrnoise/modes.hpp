#pragma once

#include <string>

namespace wgr {

inline constexpr double speed_of_light = 2.99792458e8;  // m/s

enum class Shape { Sphere, Disk };

std::string to_string(Shape s);

struct ResonatorGeometry {
  Shape shape = Shape::Sphere;
  double R = 0;          // major radius, m
  double S = 0;          // surface vertical radius of curvature, m (disk only)
  double thickness = 0;  // m (disk only)

  static ResonatorGeometry sphere(double R);
  // thickness defaults to R, matching a disk as tall as it is wide.
  static ResonatorGeometry disk(double R, double S, double thickness = 0);
  void validate() const;
};

enum class Polarization { TE, TM };

struct ModeProfile {
  enum class Source { Estimated, Supplied };
  double nu = 0;      // optical frequency, Hz
  int m = 0;          // azimuthal index
  double w_z = 0;     // polar intensity 1/e^2 half-width, m
  double w_rho = 0;   // radial intensity 1/e^2 half-width, m
  double rho0 = 0;    // radial position of mode center, m
  double lambda = 0;  // vacuum wavelength, m
  Polarization polarization = Polarization::TE;
  Source source = Source::Estimated;
};

struct ModeGeometrySummary {
  double r = 0;    // effective minor radius sqrt(w_rho * w_z), m
  double V_m = 0;  // mode volume 2 pi^2 rho0 r^2, m^3
};

struct ModeEstimatorOptions {
  Polarization polarization = Polarization::TE;
  double w_rho_coefficient = 0.80;  // empirical, calibrated against sphere mode data
};

/// Asymptotic WGM frequency for azimuthal index m (m may be fractional while
/// root-finding).  Strictly increasing in m.
double wgm_frequency(double m, double R, double n, Polarization pol = Polarization::TE);

ModeProfile estimate_fundamental_mode(const ResonatorGeometry& geom, double lambda, double n,
                                      const ModeEstimatorOptions& opts = {});

/// Builds a profile from externally supplied parameters, enforcing the
/// ModeProfile invariants against the given geometry and refractive index.
ModeProfile mode_from_parameters(const ResonatorGeometry& geom, double nu, int m, double w_z,
                                 double w_rho, double rho0, double lambda, double n);

/// Asymptotic fundamental-mode volume 3.4 pi^{3/2} (lambda/n)^{7/6} R^{11/6}.
double mode_volume(double R, double lambda, double n);

ModeGeometrySummary minor_radius(const ModeProfile& profile);

}  // namespace wgr
