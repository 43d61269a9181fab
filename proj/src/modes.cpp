#include "wgrnoise/modes.hpp"

#include <cmath>
#include <numbers>

#include "wgrnoise/errors.hpp"

namespace wgr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAiryZero1 = 2.338107410459767;  // magnitude of the first Airy zero

void check_consistency(const ModeProfile& p, double n) {
  const double nu_ring = p.m * speed_of_light / (2.0 * kPi * n * p.rho0);
  if (std::abs(p.nu - nu_ring) > 0.02 * p.nu)
    throw ModeError("mode parameters inconsistent: nu deviates from m c/(2 pi n rho0) by more than 2%");
}

}  // namespace

std::string to_string(Shape s) { return s == Shape::Sphere ? "sphere" : "disk"; }

ResonatorGeometry ResonatorGeometry::sphere(double R) {
  ResonatorGeometry g;
  g.shape = Shape::Sphere;
  g.R = R;
  g.validate();
  return g;
}

ResonatorGeometry ResonatorGeometry::disk(double R, double S, double thickness) {
  ResonatorGeometry g;
  g.shape = Shape::Disk;
  g.R = R;
  g.S = S;
  g.thickness = thickness > 0 ? thickness : R;
  g.validate();
  return g;
}

void ResonatorGeometry::validate() const {
  if (!(R > 0)) throw ModeError("geometry: R must be positive");
  if (shape == Shape::Disk) {
    if (!(S > 0)) throw ModeError("geometry: disk surface radius of curvature must be positive");
    if (!(thickness > 0)) throw ModeError("geometry: disk thickness must be positive");
  }
}

double wgm_frequency(double m, double R, double n, Polarization pol) {
  // Airy-expansion dispersion of the fundamental equatorial mode.  The
  // polarization term uses P = 1/n for TE and P = n for TM; with this
  // convention the predicted frequencies track the modeled sphere modes in
  // the bundled table to better than 0.05%.
  const double P = pol == Polarization::TE ? 1.0 / n : n;
  const double x = m + 0.5;
  return speed_of_light / (2.0 * kPi * n * R) *
         (x + kAiryZero1 * std::cbrt(x / 2.0) - P / std::sqrt(n * n - 1.0));
}

ModeProfile estimate_fundamental_mode(const ResonatorGeometry& geom, double lambda, double n,
                                      const ModeEstimatorOptions& opts) {
  geom.validate();
  if (!(lambda > 0)) throw ModeError("lambda must be positive");
  if (!(n > 1)) throw ModeError("refractive index must exceed 1");
  const double size_parameter = 2.0 * kPi * geom.R * n / lambda;
  if (size_parameter <= 50.0)
    throw ModeError("resonator too small for the asymptotic mode estimate (2 pi R n / lambda <= 50)");

  // Nearest integer azimuthal index with nu(m) = c/lambda; nu is strictly
  // increasing in m so bisection is safe.
  const double target = speed_of_light / lambda;
  double lo = 1.0, hi = 4.0 * size_parameter;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (wgm_frequency(mid, geom.R, n, opts.polarization) < target ? lo : hi) = mid;
  }
  int m = static_cast<int>(std::llround(0.5 * (lo + hi)));
  if (m < 1) m = 1;

  ModeProfile p;
  p.m = m;
  p.nu = wgm_frequency(m, geom.R, n, opts.polarization);
  p.lambda = lambda;
  p.polarization = opts.polarization;
  p.source = ModeProfile::Source::Estimated;
  p.w_z = geom.shape == Shape::Sphere
              ? geom.R / std::sqrt(static_cast<double>(m))
              : std::pow(geom.R * geom.R * geom.R * geom.S, 1.0 / 8.0) *
                    std::sqrt(lambda / (2.0 * kPi * n));
  p.w_rho = opts.w_rho_coefficient * geom.R * std::pow(static_cast<double>(m), -2.0 / 3.0);
  p.rho0 = geom.R - p.w_rho;
  if (p.w_rho > p.w_z) p.w_rho = p.w_z;  // guard; not reached for realistic sizes
  check_consistency(p, n);
  return p;
}

ModeProfile mode_from_parameters(const ResonatorGeometry& geom, double nu, int m, double w_z,
                                 double w_rho, double rho0, double lambda, double n) {
  geom.validate();
  if (m < 1) throw ModeError("mode invariant violated: m >= 1");
  if (!(w_rho > 0)) throw ModeError("mode invariant violated: w_rho > 0");
  if (!(w_rho <= w_z)) throw ModeError("mode invariant violated: w_rho <= w_z");
  if (!(w_z < geom.R)) throw ModeError("mode invariant violated: w_z < R");
  if (!(rho0 > 0 && rho0 < geom.R)) throw ModeError("mode invariant violated: 0 < rho0 < R");
  if (!(nu > 0)) throw ModeError("mode invariant violated: nu > 0");
  if (!(lambda > 0)) throw ModeError("mode invariant violated: lambda > 0");
  ModeProfile p;
  p.nu = nu;
  p.m = m;
  p.w_z = w_z;
  p.w_rho = w_rho;
  p.rho0 = rho0;
  p.lambda = lambda;
  p.source = ModeProfile::Source::Supplied;
  check_consistency(p, n);
  return p;
}

double mode_volume(double R, double lambda, double n) {
  if (!(R > 0 && lambda > 0 && n > 0)) throw ModeError("mode_volume: inputs must be positive");
  return 3.4 * std::pow(kPi, 1.5) * std::pow(lambda / n, 7.0 / 6.0) * std::pow(R, 11.0 / 6.0);
}

ModeGeometrySummary minor_radius(const ModeProfile& profile) {
  ModeGeometrySummary s;
  s.r = std::sqrt(profile.w_rho * profile.w_z);
  s.V_m = 2.0 * kPi * kPi * profile.rho0 * s.r * s.r;
  return s;
}

}  // namespace wgr
