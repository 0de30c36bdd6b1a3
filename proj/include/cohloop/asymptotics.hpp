#pragma once

#include <vector>

#include "cohloop/hopf.hpp"
#include "cohloop/stationary_phase.hpp"
#include "cohloop/su2.hpp"

namespace cohloop {

/// Leading asymptotics of the overlap of two coherent loop states as a sum
/// over the transverse crossings of their shadow curves:
///   sqrt(2) sum_x omega_x^k exp(i or_x (theta_x/2 - pi/4)) / sqrt(sin theta_x).
/// Valid as k grows through joint Bohr-Sommerfeld levels of the two loops.
/// An empty crossing list gives 0; *no_classical_contribution reports that
/// case when non-null.
complexd loop_overlap_asym(int k, const std::vector<IntersectionDatum>& crossings,
                           bool* no_classical_contribution = nullptr);

/// Two-crossing equal-angle specialization: with the lifts phase-aligned so
/// that gamma~_p = e^{iA/4} sigma~_p at the positively oriented crossing,
/// the overlap tends to sqrt(8 / sin nu) cos(k A/4 + nu/2 - pi/4), where A
/// is the area of the lune to the right of gamma and to the left of sigma
/// and nu the common crossing angle.
double symmetric_cosine_asym(int k, double lune_area, double nu);

/// Same, reading nu off measured crossing data; exactly two crossings with
/// angles equal within 1e-8 are required.
double symmetric_cosine_asym(int k, double lune_area,
                             const std::vector<IntersectionDatum>& crossings);

/// Large-k squared norm of the constant-height loop state at colatitude
/// theta: sqrt(k/pi) * T with the arclength T = 2 pi sin(theta) / sqrt(2).
/// Pole heights are rejected.
double loop_state_norm_asym(int k, double theta);

/// Leading asymptotics of the middle Wigner matrix element d^{k/2}_{00} for
/// even k: 2 cos((k+1) beta/2 - pi/4) / sqrt(pi k sin beta), beta in (0, pi).
double wigner_d00_asym(int k, double beta);

/// Classical allowedness of the Wigner element data (j, m1, m2, beta): the
/// constant-height loop of m2 and the R_y(beta)-rotated loop of m1 must
/// cross transversely.  The margin is the smallest axis/crossing triple
/// product |det[z, R_y(beta) z, x]| over the crossings (0 when forbidden);
/// it degenerates to 0 at the boundary of the allowed region.
struct AllowednessReport {
  bool allowed = false;
  double margin = 0.0;
};
AllowednessReport classically_allowed(HalfInt j, HalfInt m1, HalfInt m2, double beta);

enum class ClassicalRegime { Allowed, Boundary, Forbidden };

/// Geometric data entering the spherical-area approximation, echoed from
/// the geometry layer without recomputation.
struct AsymptoticIngredients {
  double lune_area = 0.0;          // A: right of gamma, left of sigma
  double angle = 0.0;              // nu: common crossing angle
  double volume = 0.0;             // V: |det[z, R_y(beta) z, x]| at a crossing
  std::vector<complexd> omegas;    // lift ratios at the crossings, in data order
  std::vector<int> orientations;   // crossing orientations, in data order
  // Measured defect of the standard-lift phase alignment: the larger of
  // |omega_p - e^{iA/4}| and |omega_n^k - e^{-ikA/4}| (the negatively
  // oriented crossing only aligns modulo the individual loop holonomies,
  // which the level-k power removes).
  double phase_alignment_defect = 0.0;
};

struct AsymptoticResult {
  double value = 0.0;              // meaningless unless regime != Forbidden
  ClassicalRegime regime = ClassicalRegime::Forbidden;
  bool reliable = false;           // false when forbidden or V < 1e-6
  AsymptoticIngredients ingredients;
};

/// Spherical-area asymptotics of d^j_{m2 m1}(beta):
///   sqrt(2 / (j pi V)) cos(j A/2 + nu/2 - pi/4)
/// assembled from the lune area A between the two constant-height loops,
/// their crossing angle nu, and the triple product V.  The same number is
/// recomputed through the normalized-overlap route (symmetric cosine over
/// the two asymptotic norms); the routes must agree to 1e-12, which pins
/// the law-of-sines identity V = sin(theta1) sin(theta2) sin(nu).
AsymptoticResult wigner_d_asym(HalfInt j, HalfInt m1, HalfInt m2, double beta);

/// Overlap integrand of two lifted loops on their parameter torus:
/// oscillator w(s,t) = <sigma~(t), gamma~(s)>, phase -i log w, constant
/// amplitude (k+1)/(2 pi), with analytic first derivatives from the lift
/// velocities.  Point loops are rejected.
TorusIntegrand loop_pair_integrand(int k, const LiftedLoop& gamma, const LiftedLoop& sigma);

/// The equator overlap integrand in angle coordinates: oscillator
/// w(s,t) = cos(beta/2) cos((s-t)/2) + i sin(beta/2) sin((s+t)/2) on
/// [0,2pi)^2 with amplitude (k+1)/(4 pi); its k-th-power integral equals
/// <Psi_equator, Psi_rotated-equator> and tends to
/// 2 sqrt(2/sin beta) cos((k+1) beta/2 - pi/4).
TorusIntegrand equatorial_overlap_integrand(int k, double beta);

}  // namespace cohloop
