#pragma once

#include <array>

// Quadratic-triangle reference machinery shared by mesh validation and the
// elastostatic assembly.  Node order: corners 0,1,2 then midsides 3=(01),
// 4=(12), 5=(20).

namespace wgr::fem {

struct TriQP {
  double xi, eta, w;  // weight includes the reference-triangle area factor 1/2
};

// Degree-5 rule, 7 points.
inline constexpr std::array<TriQP, 7> tri_rule() {
  constexpr double w0 = 0.225;
  constexpr double a1 = 0.059715871789770, b1 = 0.470142064105115, w1 = 0.132394152788506;
  constexpr double a2 = 0.797426985353087, b2 = 0.101286507323456, w2 = 0.125939180544827;
  return {{{1.0 / 3.0, 1.0 / 3.0, w0 / 2},
           {b1, b1, w1 / 2},
           {a1, b1, w1 / 2},
           {b1, a1, w1 / 2},
           {b2, b2, w2 / 2},
           {a2, b2, w2 / 2},
           {b2, a2, w2 / 2}}};
}

inline void shape_p2(double xi, double eta, double N[6], double dNdxi[6], double dNdeta[6]) {
  const double l1 = 1.0 - xi - eta, l2 = xi, l3 = eta;
  N[0] = l1 * (2 * l1 - 1);
  N[1] = l2 * (2 * l2 - 1);
  N[2] = l3 * (2 * l3 - 1);
  N[3] = 4 * l1 * l2;
  N[4] = 4 * l2 * l3;
  N[5] = 4 * l3 * l1;
  dNdxi[0] = 1 - 4 * l1;
  dNdxi[1] = 4 * l2 - 1;
  dNdxi[2] = 0;
  dNdxi[3] = 4 * (l1 - l2);
  dNdxi[4] = 4 * l3;
  dNdxi[5] = -4 * l3;
  dNdeta[0] = 1 - 4 * l1;
  dNdeta[1] = 0;
  dNdeta[2] = 4 * l3 - 1;
  dNdeta[3] = -4 * l2;
  dNdeta[4] = 4 * l2;
  dNdeta[5] = 4 * (l1 - l3);
}

struct EdgeQP {
  double t, w;  // Gauss point and weight on [-1, 1]
};

inline constexpr std::array<EdgeQP, 4> edge_rule() {
  constexpr double x1 = 0.3399810435848563, w1 = 0.6521451548625461;
  constexpr double x2 = 0.8611363115940526, w2 = 0.3478548451374538;
  return {{{-x2, w2}, {-x1, w1}, {x1, w1}, {x2, w2}}};
}

// Quadratic edge with nodes at t = -1, +1, 0 (two ends then midside).
inline void shape_edge_p2(double t, double N[3], double dN[3]) {
  N[0] = 0.5 * t * (t - 1);
  N[1] = 0.5 * t * (t + 1);
  N[2] = 1 - t * t;
  dN[0] = t - 0.5;
  dN[1] = t + 0.5;
  dN[2] = -2 * t;
}

}  // namespace wgr::fem
