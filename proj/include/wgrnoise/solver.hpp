#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "wgrnoise/loads.hpp"
#include "wgrnoise/materials.hpp"
#include "wgrnoise/mesh.hpp"

namespace wgr {

/// Kinematic constraints removing the rigid-body nullspace: u_rho = 0 on the
/// axis rho = 0, u_z = 0 on the z = 0 symmetry plane.
struct SymmetryConstraints {
  bool axis = true;
  bool plane = true;
};

struct StrainEnergyResult {
  double U = 0;                  // strain energy of the full revolved body, J
  double F = 0;                  // conjugate total force, N
  std::size_t dofs = 0;
  double residual_norm = 0;      // ||K u - f|| / ||f||
  double energy_error_est = 0;   // |U_fine - U_coarse| from two-level refinement
  double U_coarse = 0;           // energy on the coarser of the two levels
  int level = 0;                 // refinement level of the reported solve
  bool truncated_support = false;  // Gaussian load support cut by the boundary
                                   // inside 3 half-widths of the mode center
};

/// Single-mesh axisymmetric linear-elastic solve.  The mesh covers the
/// z >= 0 half of the cross-section; U and F refer to the full body.
/// Optionally returns the nodal displacement and consistent load vectors
/// (2 entries per node: u_rho, u_z).
StrainEnergyResult solve_static(const Mesh& mesh, const IsotropicModuli& moduli,
                                const LoadSpec& load, const SymmetryConstraints& constraints = {},
                                std::vector<double>* displacement = nullptr,
                                std::vector<double>* load_vector = nullptr);

/// Solves at spec.level and spec.level + 1 and reports the fine result with
/// the two-level energy-difference estimate.  Throws SolverError when the
/// estimate exceeds energy_tol * U.
StrainEnergyResult solve_with_refinement(const ResonatorGeometry& geom, const ModeProfile& profile,
                                         const IsotropicModuli& moduli, const LoadSpec& load,
                                         const RefinementSpec& spec = {}, double energy_tol = 0.05);

/// Stored elastic energy of a solid sphere under uniform surface pressure,
/// (2 pi / 3) P^2 R^3 / kappa, and the companion total force 4 pi R^2 P.
double analytic_uniform_sphere_energy(double P, double R, double kappa);
double analytic_uniform_sphere_force(double P, double R);

/// Plane-strain tube under lateral pressure: U = pi^2 r^2 R P^2 [3/(3k+G)],
/// F = (2 pi)^2 r R P, axial stress sigma_zz = -2 mu P.
struct TubeResult {
  double U = 0;
  double F = 0;
  double sigma_zz = 0;
};
TubeResult analytic_tube_energy(double P, double r, double R, double kappa, double G, double mu);

/// Plain-text nodal export of the mesh and a displacement field
/// (docs/file_formats.md).
void export_field(std::ostream& out, const Mesh& mesh, const std::vector<double>& displacement);

}  // namespace wgr
