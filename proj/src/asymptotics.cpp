#include "cohloop/asymptotics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cohloop {

namespace {

void require_valid_crossing(const IntersectionDatum& x) {
  if (!(x.angle > 0.0) || !(x.angle < PI))
    throw std::invalid_argument("loop_overlap_asym: crossing angle outside (0, pi)");
  if (x.orientation != 1 && x.orientation != -1)
    throw std::invalid_argument("loop_overlap_asym: crossing orientation must be +-1");
}

double colatitude_of(HalfInt j, HalfInt m) {
  return std::acos(static_cast<double>(m.twice) / static_cast<double>(j.twice));
}

}  // namespace

complexd loop_overlap_asym(int k, const std::vector<IntersectionDatum>& crossings,
                           bool* no_classical_contribution) {
  if (k < 1) throw std::invalid_argument("loop_overlap_asym: k must be positive");
  if (no_classical_contribution) *no_classical_contribution = crossings.empty();
  complexd sum(0.0, 0.0);
  for (const IntersectionDatum& x : crossings) {
    require_valid_crossing(x);
    // omega_x is a unit phase; exponentiate through the argument so the
    // k-th power cannot drift in magnitude
    const complexd omega_k = cis(k * std::arg(x.omega));
    sum += std::sqrt(2.0) * omega_k * cis(x.orientation * (0.5 * x.angle - 0.25 * PI)) /
           std::sqrt(std::sin(x.angle));
  }
  return sum;
}

double symmetric_cosine_asym(int k, double lune_area, double nu) {
  if (k < 1) throw std::invalid_argument("symmetric_cosine_asym: k must be positive");
  if (!(nu > 0.0) || !(nu < PI))
    throw std::invalid_argument("symmetric_cosine_asym: angle outside (0, pi)");
  return std::sqrt(8.0 / std::sin(nu)) * std::cos(0.25 * k * lune_area + 0.5 * nu - 0.25 * PI);
}

double symmetric_cosine_asym(int k, double lune_area,
                             const std::vector<IntersectionDatum>& crossings) {
  if (crossings.size() != 2)
    throw std::invalid_argument("symmetric_cosine_asym: exactly two crossings required");
  if (std::fabs(crossings[0].angle - crossings[1].angle) > 1e-8)
    throw std::invalid_argument("symmetric_cosine_asym: crossing angles are unequal");
  return symmetric_cosine_asym(k, lune_area, crossings[0].angle);
}

double loop_state_norm_asym(int k, double theta) {
  if (k < 1) throw std::invalid_argument("loop_state_norm_asym: k must be positive");
  if (!(theta > 0.0) || !(theta < PI))
    throw std::invalid_argument("loop_state_norm_asym: pole heights have no circle norm");
  return std::sqrt(k / PI) * TWO_PI * std::sin(theta) / std::sqrt(2.0);
}

double wigner_d00_asym(int k, double beta) {
  if (k < 2 || k % 2 != 0)
    throw std::invalid_argument("wigner_d00_asym: k must be even and positive");
  if (!(beta > 0.0) || !(beta < PI))
    throw std::invalid_argument("wigner_d00_asym: beta outside (0, pi)");
  return 2.0 * std::cos(0.5 * (k + 1) * beta - 0.25 * PI) /
         std::sqrt(PI * k * std::sin(beta));
}

AllowednessReport classically_allowed(HalfInt j, HalfInt m1, HalfInt m2, double beta) {
  const int k = j.twice;
  if (k < 1) throw std::invalid_argument("classically_allowed: j must be positive");
  const RepLevel level{k};
  (void)weight_index(level, m1);  // validates the weight ranges
  (void)weight_index(level, m2);

  AllowednessReport report;
  const Loop gamma = constant_height_loop(k, m2);
  const Loop rho = constant_height_loop(k, m1);
  if (gamma.is_point() || rho.is_point()) return report;  // pole circles never cross transversely
  const Loop sigma = Loop::rotated(SU2Element::u_y(beta), rho);

  std::vector<IntersectionDatum> crossings;
  try {
    crossings = find_intersections(gamma, sigma);
  } catch (const std::exception&) {
    return report;  // tangential or coincident contact is not transverse
  }
  if (crossings.empty()) return report;

  report.allowed = true;
  report.margin = std::fabs(parallelepiped_volume(beta, crossings[0].x));
  for (const IntersectionDatum& x : crossings)
    report.margin = std::min(report.margin, std::fabs(parallelepiped_volume(beta, x.x)));
  return report;
}

AsymptoticResult wigner_d_asym(HalfInt j, HalfInt m1, HalfInt m2, double beta) {
  const int k = j.twice;
  if (k < 1) throw std::invalid_argument("wigner_d_asym: j must be positive");
  const RepLevel level{k};
  (void)weight_index(level, m1);
  (void)weight_index(level, m2);

  AsymptoticResult out;
  const Loop gamma = constant_height_loop(k, m2);
  const Loop rho = constant_height_loop(k, m1);
  if (gamma.is_point() || rho.is_point()) return out;
  const Loop sigma = Loop::rotated(SU2Element::u_y(beta), rho);

  std::vector<IntersectionDatum> crossings;
  try {
    crossings = find_intersections(LiftedLoop(gamma), LiftedLoop(sigma));
  } catch (const std::exception&) {
    return out;  // not transverse: classically forbidden (or exactly at the boundary)
  }
  if (crossings.empty()) return out;
  if (crossings.size() != 2)
    throw std::runtime_error("wigner_d_asym: constant-height loops must cross 0 or 2 times");

  const IntersectionDatum& pos = crossings[0].orientation > 0 ? crossings[0] : crossings[1];
  const IntersectionDatum& neg = crossings[0].orientation > 0 ? crossings[1] : crossings[0];
  if (pos.orientation != 1 || neg.orientation != -1)
    throw std::runtime_error("wigner_d_asym: crossing orientations must be opposite");
  if (std::fabs(pos.angle - neg.angle) > 1e-10)
    throw std::runtime_error("wigner_d_asym: crossing angles differ beyond 1e-10");
  const double nu = pos.angle;

  const double v_pos = std::fabs(parallelepiped_volume(beta, pos.x));
  const double v_neg = std::fabs(parallelepiped_volume(beta, neg.x));
  if (std::fabs(v_pos - v_neg) > 1e-10)
    throw std::runtime_error("wigner_d_asym: triple products differ between crossings");

  const double area = lune_area(gamma, sigma, crossings);

  out.ingredients.lune_area = area;
  out.ingredients.angle = nu;
  out.ingredients.volume = v_pos;
  out.ingredients.omegas = {crossings[0].omega, crossings[1].omega};
  out.ingredients.orientations = {crossings[0].orientation, crossings[1].orientation};

  // standard-lift phase alignment: exact at the positive crossing, and
  // exact at the negative crossing once raised to the level k
  const double defect_pos = std::abs(pos.omega - cis(0.25 * area));
  const double defect_neg =
      std::abs(cis(k * std::arg(neg.omega)) - cis(-0.25 * k * area));
  out.ingredients.phase_alignment_defect = std::max(defect_pos, defect_neg);

  const double jr = 0.5 * k;
  out.value = std::sqrt(2.0 / (jr * PI * v_pos)) *
              std::cos(0.5 * jr * area + 0.5 * nu - 0.25 * PI);

  // normalized-overlap route: the symmetric cosine law over the two
  // asymptotic norms; equality with the closed form is the law of sines
  const double theta1 = colatitude_of(j, m1);
  const double theta2 = colatitude_of(j, m2);
  const double via_overlap =
      symmetric_cosine_asym(k, area, nu) /
      std::sqrt(loop_state_norm_asym(k, theta2) * loop_state_norm_asym(k, theta1));
  if (std::fabs(via_overlap - out.value) > 1e-12 * (1.0 + std::fabs(out.value)))
    throw std::runtime_error("wigner_d_asym: area route and overlap route disagree");

  out.regime = v_pos < 1e-6 ? ClassicalRegime::Boundary : ClassicalRegime::Allowed;
  out.reliable = out.regime == ClassicalRegime::Allowed;
  return out;
}

TorusIntegrand loop_pair_integrand(int k, const LiftedLoop& gamma, const LiftedLoop& sigma) {
  if (k < 1) throw std::invalid_argument("loop_pair_integrand: k must be positive");
  if (!(gamma.period() > 0.0) || !(sigma.period() > 0.0))
    throw std::invalid_argument("loop_pair_integrand: point loops have no overlap integrand");

  TorusIntegrand ig;
  ig.period_s = gamma.period();
  ig.period_t = sigma.period();
  ig.oscillator = [gamma, sigma](double s, double t) {
    return hopf_inner(sigma.at(t), gamma.at(s));
  };
  ig.phase = [osc = ig.oscillator](double s, double t) {
    const complexd w = osc(s, t);
    return complexd(std::arg(w), -std::log(std::abs(w)));
  };
  ig.amplitude = [k](double, double) { return complexd((k + 1) / TWO_PI, 0.0); };
  ig.gradient = [gamma, sigma, osc = ig.oscillator](double s,
                                                    double t) -> std::array<complexd, 2> {
    const complexd w = osc(s, t);
    const HopfPoint gs = gamma.at(s), st = sigma.at(t);
    const auto dg = gamma.derivative(s);
    const auto ds = sigma.derivative(t);
    // w is antilinear in sigma and linear in gamma
    const complexd w_s = std::conj(st.q1) * dg.first + std::conj(st.q2) * dg.second;
    const complexd w_t = std::conj(ds.first) * gs.q1 + std::conj(ds.second) * gs.q2;
    const complexd mi(0.0, -1.0);
    return {mi * w_s / w, mi * w_t / w};
  };
  return ig;
}

TorusIntegrand equatorial_overlap_integrand(int k, double beta) {
  if (k < 1) throw std::invalid_argument("equatorial_overlap_integrand: k must be positive");
  const double ch = std::cos(0.5 * beta), sh = std::sin(0.5 * beta);
  TorusIntegrand ig;
  ig.oscillator = [ch, sh](double s, double t) {
    return complexd(ch * std::cos(0.5 * (s - t)), sh * std::sin(0.5 * (s + t)));
  };
  ig.phase = [osc = ig.oscillator](double s, double t) {
    const complexd w = osc(s, t);
    return complexd(std::arg(w), -std::log(std::abs(w)));
  };
  ig.amplitude = [k](double, double) { return complexd((k + 1) / (2.0 * TWO_PI), 0.0); };
  return ig;
}

}  // namespace cohloop
