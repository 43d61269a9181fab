#pragma once

#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace wgr {

enum class Interp { Constant, Linear, LogLog };

/// One temperature-sampled physical property.  LogLog interpolates the
/// magnitude as a power law in T and falls back to linear on any segment
/// where the value changes sign or touches zero, so a signed quantity such
/// as dn/dT crosses zero linearly.
struct PropertySeries {
  Interp scheme = Interp::Constant;
  std::vector<std::pair<double, double>> samples;  // (T [K], value), T strictly increasing

  double at(double T, bool clamp = false) const;
  double min_temperature() const { return samples.front().first; }
  double max_temperature() const { return samples.back().first; }
};

/// Property values of the resonator crystal at one temperature (SI units:
/// elastic constants in Pa, gamma in W/m/K, dn_dT_over_n and alpha in 1/K).
struct MaterialProperties {
  double n = 0;
  double C11 = 0, C12 = 0, C44 = 0;
  double gamma = 0;
  double dn_dT_over_n = 0;  // signed
  double phi = 0;
  double p11 = 0, p12 = 0, p44 = 0;
  double alpha = 0;
};

struct IsotropicModuli {
  double kappa = 0;  // bulk modulus, Pa
  double G = 0;      // shear modulus, Pa
  double mu = 0;     // Poisson ratio
};

/// Immutable after load; safe for concurrent reads.
class MaterialTable {
 public:
  static MaterialTable load(std::istream& in, const std::string& source);
  static MaterialTable load_file(const std::string& path);

  const std::string& name() const { return name_; }
  MaterialProperties properties_at(double T, bool clamp = false) const;
  double property_at(const std::string& key, double T, bool clamp = false) const;
  const PropertySeries& series(const std::string& key) const;

  bool has_shear_override() const { return shear_override_ > 0; }
  double shear_override() const { return shear_override_; }

 private:
  std::string name_;
  std::map<std::string, PropertySeries> props_;
  double shear_override_ = 0;
};

/// Bulk modulus (C11 + 2 C12)/3 and Voigt-Reuss-Hill shear average for a
/// cubic crystal, with the Poisson ratio derived from (kappa, G).
IsotropicModuli isotropic_moduli(const MaterialProperties& p);

/// Same, but honoring a per-file shear_modulus override when present.
IsotropicModuli isotropic_moduli(const MaterialTable& table, double T, bool clamp = false);

}  // namespace wgr
