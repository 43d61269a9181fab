#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "wgrnoise/modes.hpp"

namespace wgr {

struct ValidationCheck {
  int criterion = 0;  // acceptance criterion 1..8, or 0 for module-level oracles
  std::string name;
  double measured = 0;
  double expected = 0;
  double tolerance = 0;  // meaning depends on kind
  enum class Kind {
    Relative,    // |measured - expected| <= tolerance * |expected|
    FactorBand,  // measured / expected within [1/tolerance, tolerance]
    Below,       // measured <= expected (tolerance unused)
    Boolean      // measured != 0 means pass
  } kind = Kind::Relative;
  bool pass = false;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass() const;
  std::size_t failures() const;
};

struct ValidationOptions {
  std::string material_path;
  std::string mode_table_path;
  int level = 1;      // FEM refinement level used by the oracle solves
  bool quick = false; // restrict to the sub-second/small-geometry checks
};

/// Runs the cross-module oracle suite: analytic elastostatic solutions,
/// reference-table reproduction, closed-form estimates, scaling fits, scaling
/// and symmetry properties, and output determinism.
ValidationReport run_validation(const ValidationOptions& opt);

void print_report(std::ostream& out, const ValidationReport& report);

/// Independent fine-grid quadrature of the volumetric-load conjugate force
/// over the body (no finite elements involved); used as the oracle for the
/// mesh-based quadrature.
double eo_force_oracle(const ResonatorGeometry& geom, const ModeProfile& profile, double Sigma0);

}  // namespace wgr
