#include "wgrnoise/materials.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "wgrnoise/errors.hpp"
#include "wgrnoise/textfile.hpp"

namespace wgr {

namespace {

const char* const kRequiredKeys[] = {"n",   "C11", "C12", "C44", "gamma", "dn_dT_over_n",
                                     "phi", "p11", "p12", "p44", "alpha"};

// dn_dT_over_n is the only signed property; everything else must be positive.
bool may_be_signed(const std::string& key) { return key == "dn_dT_over_n"; }

Interp parse_scheme(const std::string& tok, const std::string& source, int line) {
  if (tok == "constant") return Interp::Constant;
  if (tok == "linear") return Interp::Linear;
  if (tok == "loglog") return Interp::LogLog;
  throw ParseError(source, line, "unknown interpolation scheme '" + tok + "'");
}

double interp_segment(Interp scheme, double T, double T0, double v0, double T1, double v1) {
  const double t = (T - T0) / (T1 - T0);
  if (scheme == Interp::LogLog && v0 * v1 > 0 && T0 > 0 && T1 > 0) {
    const double sign = v0 > 0 ? 1.0 : -1.0;
    const double lt = (std::log(T) - std::log(T0)) / (std::log(T1) - std::log(T0));
    return sign * std::exp(std::log(std::abs(v0)) +
                           lt * (std::log(std::abs(v1)) - std::log(std::abs(v0))));
  }
  return v0 + t * (v1 - v0);
}

}  // namespace

double PropertySeries::at(double T, bool clamp) const {
  if (samples.empty()) throw MaterialError("property has no samples");
  // Exact at sample points, bit for bit.
  for (const auto& [Ts, v] : samples)
    if (T == Ts) return v;
  if (samples.size() == 1 || scheme == Interp::Constant) return samples.front().second;
  if (T < samples.front().first) {
    if (clamp) return samples.front().second;
    throw RangeError("temperature " + std::to_string(T) + " K below sampled range [" +
                     std::to_string(min_temperature()) + ", " +
                     std::to_string(max_temperature()) + "] K");
  }
  if (T > samples.back().first) {
    if (clamp) return samples.back().second;
    throw RangeError("temperature " + std::to_string(T) + " K above sampled range [" +
                     std::to_string(min_temperature()) + ", " +
                     std::to_string(max_temperature()) + "] K");
  }
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    if (T <= samples[i + 1].first)
      return interp_segment(scheme, T, samples[i].first, samples[i].second,
                            samples[i + 1].first, samples[i + 1].second);
  }
  return samples.back().second;
}

MaterialTable MaterialTable::load(std::istream& in, const std::string& source) {
  MaterialTable table;
  const auto lines = read_text_lines(in);

  std::string current_key;
  for (const auto& line : lines) {
    const auto& tok = line.tokens;
    if (tok[0] == "material") {
      if (tok.size() != 2) throw ParseError(source, line.number, "material expects one name");
      table.name_ = tok[1];
      current_key.clear();
    } else if (tok[0] == "property") {
      if (tok.size() != 3)
        throw ParseError(source, line.number, "property expects a key and a scheme");
      current_key = tok[1];
      if (table.props_.count(current_key))
        throw ParseError(source, line.number, "duplicate property '" + current_key + "'");
      table.props_[current_key].scheme = parse_scheme(tok[2], source, line.number);
    } else if (!current_key.empty()) {
      if (tok.size() != 2)
        throw ParseError(source, line.number, "sample line expects '<T_K> <value>'");
      const double T = to_number(tok[0], source, line.number);
      const double v = to_number(tok[1], source, line.number);
      auto& series = table.props_[current_key];
      if (!series.samples.empty() && T <= series.samples.back().first)
        throw ParseError(source, line.number,
                         "temperatures of '" + current_key + "' must be strictly increasing");
      if (T <= 0) throw ParseError(source, line.number, "temperature must be positive");
      if (!may_be_signed(current_key) && current_key != "shear_modulus" && v <= 0)
        throw ParseError(source, line.number, "'" + current_key + "' must be positive");
      series.samples.emplace_back(T, v);
    } else {
      throw ParseError(source, line.number, "unexpected token '" + tok[0] + "'");
    }
  }

  if (table.name_.empty()) throw ParseError(source, 1, "missing 'material <name>' line");

  for (const char* key : kRequiredKeys) {
    auto it = table.props_.find(key);
    if (it == table.props_.end())
      throw MaterialError(source + ": missing required property '" + std::string(key) + "'");
    const auto& series = it->second;
    if (series.samples.empty())
      throw MaterialError(source + ": property '" + std::string(key) + "' has no samples");
    if (series.scheme != Interp::Constant && series.samples.size() < 2)
      throw MaterialError(source + ": property '" + std::string(key) +
                          "' is temperature-dependent but has fewer than two samples");
  }

  if (auto it = table.props_.find("shear_modulus"); it != table.props_.end()) {
    table.shear_override_ = it->second.samples.front().second;
    if (table.shear_override_ <= 0)
      throw MaterialError(source + ": shear_modulus override must be positive");
  }

  // Elastic stability at every elastic-constant sample.
  const double C11 = table.props_.at("C11").samples.front().second;
  const double C12 = table.props_.at("C12").samples.front().second;
  const double C44 = table.props_.at("C44").samples.front().second;
  if (!(C11 > 0 && C11 > std::abs(C12) && C44 > 0))
    throw MaterialError(source + ": elastic constants violate stability (C11 > |C12|, C44 > 0)");

  return table;
}

MaterialTable MaterialTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MaterialError("cannot open material file '" + path + "'");
  return load(in, path);
}

double MaterialTable::property_at(const std::string& key, double T, bool clamp) const {
  return series(key).at(T, clamp);
}

const PropertySeries& MaterialTable::series(const std::string& key) const {
  auto it = props_.find(key);
  if (it == props_.end()) throw MaterialError("unknown property '" + key + "'");
  return it->second;
}

MaterialProperties MaterialTable::properties_at(double T, bool clamp) const {
  MaterialProperties p;
  p.n = property_at("n", T, clamp);
  p.C11 = property_at("C11", T, clamp);
  p.C12 = property_at("C12", T, clamp);
  p.C44 = property_at("C44", T, clamp);
  p.gamma = property_at("gamma", T, clamp);
  p.dn_dT_over_n = property_at("dn_dT_over_n", T, clamp);
  p.phi = property_at("phi", T, clamp);
  p.p11 = property_at("p11", T, clamp);
  p.p12 = property_at("p12", T, clamp);
  p.p44 = property_at("p44", T, clamp);
  p.alpha = property_at("alpha", T, clamp);
  return p;
}

IsotropicModuli isotropic_moduli(const MaterialProperties& p) {
  if (!(p.C11 > 0 && p.C11 > std::abs(p.C12) && p.C44 > 0))
    throw MaterialError("elastic constants violate stability (C11 > |C12|, C44 > 0)");
  IsotropicModuli m;
  m.kappa = (p.C11 + 2.0 * p.C12) / 3.0;
  const double gv = (p.C11 - p.C12 + 3.0 * p.C44) / 5.0;
  const double gr = 5.0 * (p.C11 - p.C12) * p.C44 / (4.0 * p.C44 + 3.0 * (p.C11 - p.C12));
  m.G = 0.5 * (gv + gr);
  m.mu = (3.0 * m.kappa - 2.0 * m.G) / (2.0 * (3.0 * m.kappa + m.G));
  if (!(m.kappa > 0 && m.G > 0 && m.mu > -1.0 && m.mu < 0.5))
    throw MaterialError("derived isotropic moduli out of range");
  return m;
}

IsotropicModuli isotropic_moduli(const MaterialTable& table, double T, bool clamp) {
  IsotropicModuli m = isotropic_moduli(table.properties_at(T, clamp));
  if (table.has_shear_override()) {
    m.G = table.shear_override();
    m.mu = (3.0 * m.kappa - 2.0 * m.G) / (2.0 * (3.0 * m.kappa + m.G));
  }
  return m;
}

}  // namespace wgr
