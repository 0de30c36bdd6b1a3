#pragma once

#include <vector>

#include "cohloop/hopf.hpp"
#include "cohloop/su2.hpp"

namespace cohloop {

/// Coherent state attached to the fibre point p: the section with weight
/// coefficients conj(e_a[p]), so that rep_inner(coherent_state(p), s)
/// reproduces the evaluation s[p].
RepVector coherent_state(RepLevel level, const HopfPoint& base);

/// Overlap <psi_p, psi_q> = (k+1)/(2*pi) * <q, p>^k, antilinear in p.
complexd coherent_inner(RepLevel level, const HopfPoint& p, const HopfPoint& q);

/// Magnitude (k+1)/(2*pi) * cos^k(d/2) of the Bergman kernel between the
/// two base points, with d their great-circle distance.
double bergman_magnitude(RepLevel level, const SpherePoint& x, const SpherePoint& y);

/// Coherent loop state: the integral over one period of the coherent
/// states along the lifted loop, by composite trapezoid quadrature on the
/// periodic parameter.  Starts at max(64, 4k) nodes (or initial_nodes when
/// positive) and doubles until a doubling moves the result by less than
/// 1e-10.  Degenerate point loops return the coherent state at the constant
/// lift value instead (pole convention); *pole_substituted reports whether
/// that happened and *nodes_used the converged node count (0 for the pole
/// branch).  Throws std::invalid_argument when the loop violates the
/// order-k Bohr-Sommerfeld condition, since the integrand only closes up
/// over the period when holonomy^k = 1.
RepVector loop_state_quadrature(RepLevel level, const LiftedLoop& lift, int initial_nodes = 0,
                                bool* pole_substituted = nullptr, int* nodes_used = nullptr);

/// Closed form of the loop state of the standard constant-height lift at
/// cos(theta) = 2m/k: the single-weight vector c_a e_a with a = k/2 - m and
///   c_a = sqrt(pi (k+1) C(k,a)) sin^a(theta/2) cos^{k-a}(theta/2) sin(theta),
/// evaluated in log space.  For m = +-k/2 the loop degenerates to a pole
/// and the coherent state at the standard pole fibre point is returned
/// instead (pole convention), flagged via *pole_substituted.
RepVector constant_height_state(RepLevel level, HalfInt m, bool* pole_substituted = nullptr);

/// Samples of the fibrewise norm |v(u(theta, phi))| on the inclusive grid
/// theta_i = pi*i/(n_theta-1), i = 0..n_theta-1, crossed with the half-open
/// grid phi_j = 2*pi*j/n_phi, j = 0..n_phi-1.  Row-major, phi fastest.
/// Requires n_theta >= 2 and n_phi >= 2.
std::vector<double> fibrewise_norm_field(const RepVector& v, int n_theta, int n_phi);

}  // namespace cohloop
