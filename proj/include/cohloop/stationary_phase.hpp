#pragma once

#include <array>
#include <functional>
#include <vector>

#include "cohloop/numeric.hpp"

namespace cohloop {

/// Oscillatory integrand f(s,t) e^{ikS(s,t)} over the torus
/// [0, period_s) x [0, period_t).  The phase S may be complex as long as
/// Im S >= 0 up to roundoff, so |e^{iS}| <= 1 and the integrand magnitude
/// peaks where Im S = 0.
///
/// The derivative callbacks are optional.  When `gradient` (dS/ds, dS/dt)
/// or `hessian` (row-major S_ss, S_st, S_ts, S_tt) are absent they are
/// replaced by Richardson-extrapolated central differences.  These
/// differences prefer the `oscillator` callback w = e^{iS} when present:
/// derivatives of S are then assembled from derivatives of w, which stays
/// smooth across branch cuts of log w.  `oscillator` also lets the
/// quadrature oracle raise the unit-scale factor to the k-th power instead
/// of exponentiating k S.
struct TorusIntegrand {
  std::function<complexd(double, double)> phase;
  std::function<complexd(double, double)> amplitude;
  double period_s = TWO_PI;
  double period_t = TWO_PI;
  std::function<std::array<complexd, 2>(double, double)> gradient;
  std::function<std::array<complexd, 4>(double, double)> hessian;
  std::function<complexd(double, double)> oscillator;
};

/// Nondegenerate stationary point of the phase: dS = 0 and Im S = 0 (the
/// integrand magnitude is maximal there).
struct CriticalPoint {
  double s = 0.0;
  double t = 0.0;
  complexd phase_value;                  // S at the point
  std::array<complexd, 4> hessian;       // row-major S_ss, S_st, S_ts, S_tt
  std::array<complexd, 2> eigenvalues;   // of the Hessian
  std::array<double, 2> alphas;          // principal arguments of the eigenvalues
};

/// Locates all stationary points of the phase on the torus: seeds at local
/// minima of |dS|^2 on a grid x grid scan, Newton-refines each seed, keeps
/// refined points with |dS| < 1e-10 and Im S < 1e-8, and deduplicates at
/// 1e-6 resolution.  Throws when a kept point has a (near-)degenerate
/// Hessian, or when the scan sees a magnitude-1 ridge that Newton cannot
/// resolve into isolated points.
std::vector<CriticalPoint> find_stationary_points(const TorusIntegrand& integrand, int grid = 64);

/// Leading term of the asymptotics as k -> infinity:
///   (2*pi/k)^{n/2} * sum_x f(x) e^{ikS(x)} e^{i sum_j (pi/4 - alpha_j/2)}
///                    / |det H_x|^{1/2}
/// with n = 2.  For a real phase this reduces to the classical formula
/// with the signature factor e^{i pi sigma_x / 4}.
complexd csp_leading_term(int k, const TorusIntegrand& integrand,
                          const std::vector<CriticalPoint>& points);

/// Tensor-product trapezoid value of the torus integral.  Starts at
/// initial_nodes per dimension (default max(64, 8k)) and doubles until a
/// doubling moves the result by less than 1e-9; throws if the node cap is
/// reached first.
complexd quadrature_oracle(const TorusIntegrand& integrand, int k, int initial_nodes = 0);

/// Value f(s,t) e^{ikS(s,t)} of the integrand at one point.
complexd integrand_value(const TorusIntegrand& integrand, int k, double s, double t);

}  // namespace cohloop
