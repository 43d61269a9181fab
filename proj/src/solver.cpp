#include "wgrnoise/solver.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "fem_detail.hpp"
#include "wgrnoise/errors.hpp"

namespace wgr {

namespace {

constexpr double kPi = std::numbers::pi;

struct Elasticity {
  // Axisymmetric stiffness for strain order (e_rr, e_zz, e_tt, g_rz).
  double lambda, G;
  explicit Elasticity(const IsotropicModuli& m) : lambda(m.kappa - 2.0 * m.G / 3.0), G(m.G) {}

  void apply(const double e[4], double s[4]) const {
    const double tr = e[0] + e[1] + e[2];
    s[0] = lambda * tr + 2.0 * G * e[0];
    s[1] = lambda * tr + 2.0 * G * e[1];
    s[2] = lambda * tr + 2.0 * G * e[2];
    s[3] = G * e[3];
  }
};

struct EdgeGeometry {
  double rho, z, ds;  // position and |dx/dt| at a quadrature point
  double nr, nz;      // outward unit normal
  double s;           // surface arc coordinate
};

EdgeGeometry edge_point(const Mesh& mesh, const BoundaryEdge& e, double t) {
  double N[3], dN[3];
  fem::shape_edge_p2(t, N, dN);
  EdgeGeometry g{};
  double tr = 0, tz = 0;
  for (int k = 0; k < 3; ++k) {
    g.rho += N[k] * mesh.rho[e.nodes[k]];
    g.z += N[k] * mesh.z[e.nodes[k]];
    g.s += N[k] * e.s[k];
    tr += dN[k] * mesh.rho[e.nodes[k]];
    tz += dN[k] * mesh.z[e.nodes[k]];
  }
  g.ds = std::hypot(tr, tz);
  g.nr = tz / g.ds;
  g.nz = -tr / g.ds;
  const double ox = g.rho - mesh.rho[e.opposite];
  const double oz = g.z - mesh.z[e.opposite];
  if (g.nr * ox + g.nz * oz < 0) {
    g.nr = -g.nr;
    g.nz = -g.nz;
  }
  return g;
}

}  // namespace

StrainEnergyResult solve_static(const Mesh& mesh, const IsotropicModuli& moduli,
                                const LoadSpec& load, const SymmetryConstraints& constraints,
                                std::vector<double>* displacement,
                                std::vector<double>* load_vector) {
  if (!(load.amplitude > 0)) throw SolverError("load amplitude must be positive");
  const std::size_t n_dof = mesh.dof_count();
  const Elasticity mat(moduli);
  const auto tri_rule = fem::tri_rule();
  const auto edge_rule = fem::edge_rule();

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(mesh.tris.size() * 78);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n_dof);
  double force_half = 0;

  // Volume terms: stiffness and, for the volumetric load, consistent nodal
  // forces plus the magnitude quadrature of the conjugate force.
  double N[6], dxi[6], deta[6];
  for (const auto& tri : mesh.tris) {
    double Ke[12][12] = {};
    double fe[12] = {};
    for (const auto& qp : tri_rule) {
      fem::shape_p2(qp.xi, qp.eta, N, dxi, deta);
      double j11 = 0, j12 = 0, j21 = 0, j22 = 0, rho = 0, zz = 0;
      for (int k = 0; k < 6; ++k) {
        j11 += dxi[k] * mesh.rho[tri[k]];
        j12 += dxi[k] * mesh.z[tri[k]];
        j21 += deta[k] * mesh.rho[tri[k]];
        j22 += deta[k] * mesh.z[tri[k]];
        rho += N[k] * mesh.rho[tri[k]];
        zz += N[k] * mesh.z[tri[k]];
      }
      const double det = j11 * j22 - j12 * j21;
      if (!(det > 0)) throw SolverError("inverted element during assembly");
      double brho[6], bz[6], bt[6];
      for (int k = 0; k < 6; ++k) {
        brho[k] = (j22 * dxi[k] - j12 * deta[k]) / det;
        bz[k] = (-j21 * dxi[k] + j11 * deta[k]) / det;
        bt[k] = rho > 0 ? N[k] / rho : 0.0;
      }
      const double w = qp.w * det * 2.0 * kPi * rho;

      // Columns of the strain-displacement operator for (u_rho, u_z) of each node.
      double B[4][12];
      for (int k = 0; k < 6; ++k) {
        B[0][2 * k] = brho[k];
        B[0][2 * k + 1] = 0;
        B[1][2 * k] = 0;
        B[1][2 * k + 1] = bz[k];
        B[2][2 * k] = bt[k];
        B[2][2 * k + 1] = 0;
        B[3][2 * k] = bz[k];
        B[3][2 * k + 1] = brho[k];
      }
      double DB[4][12];
      for (int c = 0; c < 12; ++c) {
        const double e[4] = {B[0][c], B[1][c], B[2][c], B[3][c]};
        double s[4];
        mat.apply(e, s);
        for (int r = 0; r < 4; ++r) DB[r][c] = s[r];
      }
      for (int a = 0; a < 12; ++a)
        for (int b = 0; b < 12; ++b) {
          double acc = 0;
          for (int r = 0; r < 4; ++r) acc += B[r][a] * DB[r][b];
          Ke[a][b] += w * acc;
        }

      if (load.kind == LoadSpec::Kind::EoVolumetric) {
        const double x = rho - load.rho0;
        const double d = std::hypot(x, zz);
        if (d > 0) {
          const double weight =
              load.amplitude * std::exp(-(x * x) / (load.w_rho * load.w_rho) -
                                        (zz * zz) / (load.w_z * load.w_z));
          const double sr = -weight * x / d;
          const double sz = -weight * zz / d;
          for (int k = 0; k < 6; ++k) {
            fe[2 * k] += w * N[k] * sr;
            fe[2 * k + 1] += w * N[k] * sz;
          }
          force_half += w * (std::abs(sr) + std::abs(sz));
        }
      }
    }
    for (int a = 0; a < 12; ++a) {
      const int ga = 2 * tri[a / 2] + (a % 2);
      f[ga] += fe[a];
      for (int b = 0; b < 12; ++b) {
        const int gb = 2 * tri[b / 2] + (b % 2);
        triplets.emplace_back(ga, gb, Ke[a][b]);
      }
    }
  }

  // Surface terms.
  if (load.kind != LoadSpec::Kind::EoVolumetric) {
    for (const auto& e : mesh.surface) {
      double Nk[3], dNk[3];
      for (const auto& qp : edge_rule) {
        const EdgeGeometry g = edge_point(mesh, e, qp.t);
        fem::shape_edge_p2(qp.t, Nk, dNk);
        double magnitude = load.amplitude;
        double sign = -1.0;  // uniform pressure pushes inward
        if (load.kind == LoadSpec::Kind::BbSurface) {
          magnitude *= std::exp(-(g.s * g.s) / (load.w_z * load.w_z));
          sign = 1.0;  // ring-stretching load pulls outward
        }
        const double w = qp.w * g.ds * 2.0 * kPi * g.rho;
        for (int k = 0; k < 3; ++k) {
          f[2 * e.nodes[k]] += w * Nk[k] * sign * magnitude * g.nr;
          f[2 * e.nodes[k] + 1] += w * Nk[k] * sign * magnitude * g.nz;
        }
        force_half += w * magnitude;
      }
    }
  }

  // Symmetry constraints (homogeneous): drop rows/columns, unit diagonal.
  std::vector<char> fixed(n_dof, 0);
  for (std::size_t i = 0; i < mesh.node_count(); ++i) {
    if (constraints.axis && mesh.on_axis[i]) fixed[2 * i] = 1;
    if (constraints.plane && mesh.on_plane[i]) fixed[2 * i + 1] = 1;
  }
  std::vector<Eigen::Triplet<double>> kept;
  kept.reserve(triplets.size());
  for (const auto& t : triplets)
    if (!fixed[t.row()] && !fixed[t.col()]) kept.push_back(t);
  for (std::size_t d = 0; d < n_dof; ++d) {
    if (fixed[d]) {
      kept.emplace_back(d, d, 1.0);
      f[d] = 0.0;
    }
  }

  Eigen::SparseMatrix<double> K(n_dof, n_dof);
  K.setFromTriplets(kept.begin(), kept.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(K);
  if (ldlt.info() != Eigen::Success)
    throw SolverError("sparse factorization failed (singular system or insufficient constraints)");
  const Eigen::VectorXd u = ldlt.solve(f);
  const double fnorm = f.norm();
  const double residual = fnorm > 0 ? (K * u - f).norm() / fnorm : 0.0;
  if (!(residual < 1e-6))
    throw SolverError("solver residual " + std::to_string(residual) +
                      " too large (ill-conditioned or under-constrained system)");

  StrainEnergyResult res;
  // The mesh covers the z >= 0 half; the mirror half doubles both integrals.
  res.U = u.dot(f);
  res.F = 2.0 * force_half;
  res.dofs = n_dof;
  res.residual_norm = residual;
  if (load.kind == LoadSpec::Kind::EoVolumetric) {
    double rho_max = 0, z_max = 0;
    for (const auto& e : mesh.surface)
      for (int k = 0; k < 3; ++k) {
        rho_max = std::max(rho_max, mesh.rho[e.nodes[k]]);
        z_max = std::max(z_max, mesh.z[e.nodes[k]]);
      }
    res.truncated_support =
        load.rho0 + 3.0 * load.w_rho > rho_max || 3.0 * load.w_z > z_max;
  }
  if (!(res.U > 0)) throw SolverError("nonpositive strain energy");
  if (displacement) displacement->assign(u.data(), u.data() + u.size());
  if (load_vector) load_vector->assign(f.data(), f.data() + f.size());
  return res;
}

StrainEnergyResult solve_with_refinement(const ResonatorGeometry& geom, const ModeProfile& profile,
                                         const IsotropicModuli& moduli, const LoadSpec& load,
                                         const RefinementSpec& spec, double energy_tol) {
  RefinementSpec coarse_spec = spec;
  coarse_spec.level = spec.level - 1;
  const Mesh coarse = build_mesh(geom, profile, coarse_spec);
  const StrainEnergyResult rc = solve_static(coarse, moduli, load);
  const Mesh fine = build_mesh(geom, profile, spec);
  StrainEnergyResult rf = solve_static(fine, moduli, load);
  rf.U_coarse = rc.U;
  rf.energy_error_est = std::abs(rf.U - rc.U);
  rf.level = spec.level;
  if (rf.energy_error_est > energy_tol * std::abs(rf.U))
    throw SolverError("strain energy did not converge under refinement: estimate " +
                      std::to_string(rf.energy_error_est / rf.U) + " of U exceeds tolerance");
  return rf;
}

double analytic_uniform_sphere_energy(double P, double R, double kappa) {
  if (!(P > 0 && R > 0 && kappa > 0))
    throw Error("analytic_uniform_sphere_energy: inputs must be positive");
  return (2.0 * kPi / 3.0) * P * P * R * R * R / kappa;
}

double analytic_uniform_sphere_force(double P, double R) { return 4.0 * kPi * R * R * P; }

TubeResult analytic_tube_energy(double P, double r, double R, double kappa, double G, double mu) {
  if (!(P > 0 && r > 0 && R > 0 && kappa > 0 && G >= 0))
    throw Error("analytic_tube_energy: inputs must be positive");
  TubeResult t;
  t.U = kPi * kPi * r * r * R * P * P * (3.0 / (3.0 * kappa + G));
  t.F = (2.0 * kPi) * (2.0 * kPi) * r * R * P;
  t.sigma_zz = -2.0 * mu * P;
  return t;
}

void export_field(std::ostream& out, const Mesh& mesh, const std::vector<double>& displacement) {
  out << "wgrnoise-field 1\n";
  out << "nodes " << mesh.node_count() << "\n";
  char buf[160];
  for (std::size_t i = 0; i < mesh.node_count(); ++i) {
    const double ur = displacement.size() >= 2 * (i + 1) ? displacement[2 * i] : 0.0;
    const double uz = displacement.size() >= 2 * (i + 1) ? displacement[2 * i + 1] : 0.0;
    std::snprintf(buf, sizeof buf, "%zu %.9e %.9e %.9e %.9e\n", i, mesh.rho[i], mesh.z[i], ur, uz);
    out << buf;
  }
  out << "elements " << mesh.element_count() << "\n";
  for (const auto& tri : mesh.tris) {
    out << tri[0] << ' ' << tri[1] << ' ' << tri[2] << ' ' << tri[3] << ' ' << tri[4] << ' '
        << tri[5] << "\n";
  }
}

}  // namespace wgr
