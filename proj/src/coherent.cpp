#include "cohloop/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cohloop/numeric.hpp"

namespace cohloop {

RepVector coherent_state(RepLevel level, const HopfPoint& base) {
  const std::vector<complexd> values = monomial_basis_values(level, base);
  RepVector state(level);
  for (int a = 0; a <= level.k; ++a) state[a] = std::conj(values[a]);
  return state;
}

complexd coherent_inner(RepLevel level, const HopfPoint& p, const HopfPoint& q) {
  return (level.k + 1) / TWO_PI * pow_int(hopf_inner(q, p), level.k);
}

double bergman_magnitude(RepLevel level, const SpherePoint& x, const SpherePoint& y) {
  const double c = std::clamp(x.n.dot(y.n), -1.0, 1.0);
  const double half_cos = std::sqrt(0.5 * (1.0 + c));  // cos(d/2), d great-circle distance
  if (half_cos == 0.0 && level.k > 0) return 0.0;
  return std::exp(std::log((level.k + 1) / TWO_PI) + xlogy(level.k, half_cos));
}

namespace {

// Sum of the coherent-state coefficient vectors at n equally spaced
// parameters with offset stride, accumulated into acc.
void accumulate_nodes(RepLevel level, const LiftedLoop& lift, int n, double t0, double dt,
                      std::vector<complexd>& acc) {
  for (int i = 0; i < n; ++i) {
    const std::vector<complexd> values = monomial_basis_values(level, lift.at(t0 + i * dt));
    for (int a = 0; a <= level.k; ++a) acc[a] += std::conj(values[a]);
  }
}

}  // namespace

RepVector loop_state_quadrature(RepLevel level, const LiftedLoop& lift, int initial_nodes,
                                bool* pole_substituted, int* nodes_used) {
  if (pole_substituted) *pole_substituted = false;
  if (nodes_used) *nodes_used = 0;
  if (lift.base().is_point()) {
    if (pole_substituted) *pole_substituted = true;
    return coherent_state(level, lift.at(0.0));
  }
  const double defect = bs_defect(lift.base(), level.k);
  if (defect > 1e-8) {
    std::ostringstream msg;
    msg << "loop_state_quadrature: loop is not Bohr-Sommerfeld at level " << level.k
        << " (holonomy defect " << defect << ")";
    throw std::invalid_argument(msg.str());
  }

  const double period = lift.period();
  int n = initial_nodes > 0 ? initial_nodes : std::max(64, 4 * level.k);
  std::vector<complexd> sum(level.k + 1, complexd(0.0, 0.0));
  accumulate_nodes(level, lift, n, 0.0, period / n, sum);

  RepVector result(level);
  for (int a = 0; a <= level.k; ++a) result[a] = sum[a] * (period / n);

  constexpr int kMaxNodes = 1 << 22;
  while (true) {
    // midpoints of the current panels refine the trapezoid sum in place
    accumulate_nodes(level, lift, n, 0.5 * period / n, period / n, sum);
    n *= 2;
    RepVector refined(level);
    for (int a = 0; a <= level.k; ++a) refined[a] = sum[a] * (period / n);
    double moved = 0.0;
    for (int a = 0; a <= level.k; ++a) moved += std::norm(refined[a] - result[a]);
    result = refined;
    if (std::sqrt(moved) < 1e-10) break;
    if (n > kMaxNodes)
      throw std::runtime_error("loop_state_quadrature: trapezoid rule failed to converge");
  }
  if (nodes_used) *nodes_used = n;
  return result;
}

RepVector constant_height_state(RepLevel level, HalfInt m, bool* pole_substituted) {
  const int a = weight_index(level, m);
  if (pole_substituted) *pole_substituted = false;
  if (a == 0 || a == level.k) {
    // degenerate pole loop: substitute the coherent state at the standard
    // pole fibre point, (0,1) at the north pole and (1,0) at the south
    if (pole_substituted) *pole_substituted = true;
    const Vec3 pole{0.0, 0.0, a == 0 ? 1.0 : -1.0};
    return coherent_state(level, fiber_point_of(pole));
  }
  const int k = level.k;
  const double z = 2.0 * m.value() / k;
  const double sin_half = std::sqrt(0.5 * (1.0 - z));
  const double cos_half = std::sqrt(0.5 * (1.0 + z));
  const double sin_theta = std::sqrt((1.0 - z) * (1.0 + z));
  const double log_c = 0.5 * (std::log(PI) + std::log(k + 1.0) + log_binomial(k, a)) +
                       xlogy(a, sin_half) + xlogy(k - a, cos_half) + std::log(sin_theta);
  RepVector state(level);
  state[a] = std::exp(log_c);
  return state;
}

std::vector<double> fibrewise_norm_field(const RepVector& v, int n_theta, int n_phi) {
  if (n_theta < 2 || n_phi < 2)
    throw std::invalid_argument("fibrewise_norm_field: grid must be at least 2x2");
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  for (int i = 0; i < n_theta; ++i) {
    const double theta = PI * i / (n_theta - 1);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = TWO_PI * j / n_phi;
      // the norm is invariant under the fibre phase, so any fibre point
      // works; fiber_point_of also covers the poles where the standard
      // trivialization breaks down
      const Vec3 n = SpherePoint::from_angles(theta, phi).n;
      samples.push_back(std::abs(evaluate_section(v, fiber_point_of(n))));
    }
  }
  return samples;
}

}  // namespace cohloop
