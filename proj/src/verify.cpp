#include "cohloop/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "cohloop/asymptotics.hpp"
#include "cohloop/coherent.hpp"
#include "cohloop/hopf.hpp"
#include "cohloop/numeric.hpp"
#include "cohloop/stationary_phase.hpp"
#include "cohloop/su2.hpp"

namespace cohloop {
namespace {

double fibre_distance(const HopfPoint& a, const HopfPoint& b) {
  return std::abs(a.q1 - b.q1) + std::abs(a.q2 - b.q2);
}

HopfPoint random_fibre_point(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  while (true) {
    const complexd a(g(rng), g(rng)), b(g(rng), g(rng));
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    if (n > 1e-3) return HopfPoint(a / n, b / n, 1e-9);
  }
}

SU2Element random_group_element(std::mt19937_64& rng) {
  const HopfPoint p = random_fibre_point(rng);
  return SU2Element::from_matrix(p.q1, p.q2, -std::conj(p.q2), std::conj(p.q1));
}

RepVector random_unit_rep_vector(std::mt19937_64& rng, RepLevel level) {
  std::normal_distribution<double> g;
  RepVector v(level);
  for (int a = 0; a <= level.k; ++a) v[a] = complexd(g(rng), g(rng));
  return complexd(1.0 / v.norm(), 0.0) * v;
}

struct SuiteRunner {
  explicit SuiteRunner(const VerifyOptions& options) : opt(options) {}

  const VerifyOptions& opt;
  std::vector<InvariantReport> reports;

  void check(const std::string& name, double tol, const std::function<double()>& worst_defect) {
    InvariantReport r;
    r.name = name;
    r.tolerance = tol * opt.tol_scale;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.defect = worst_defect();
      r.passed = r.defect <= r.tolerance;
    } catch (const std::exception& e) {
      r.defect = std::numeric_limits<double>::quiet_NaN();
      r.passed = false;
      r.error = e.what();
    }
    r.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    reports.push_back(std::move(r));
  }
};

}  // namespace

std::vector<InvariantReport> run_invariant_suite(const VerifyOptions& options) {
  SuiteRunner runner(options);

  // ---------------- representation algebra ----------------

  runner.check("su2/basis-orthonormality", 1e-10, [&] {
    double worst = 0.0;
    for (int k : {7, 24}) {
      const RepLevel level{k};
      for (int a = 0; a <= k; ++a)
        for (int b = 0; b <= k; ++b) {
          const complexd gram = rep_inner(RepVector::basis(level, a), RepVector::basis(level, b));
          worst = std::max(worst, std::abs(gram - complexd(a == b ? 1.0 : 0.0, 0.0)));
        }
      // the coefficient inner product matches the L2 integral of the
      // sections: each basis norm integrates to one over the sphere.  The
      // integrand vanishes like sin(theta) at the poles, so clipping the
      // interval away from the chart singularity at theta = pi costs O(1e-13)
      for (int a : {0, k / 3, k}) {
        const RepVector e = RepVector::basis(level, a);
        const double integral = adaptive_simpson(
            [&](double theta) {
              const double amp = std::abs(evaluate_section(e, section_u(theta, 0.37)));
              return TWO_PI * 0.5 * amp * amp * std::sin(theta);
            },
            1e-7, PI - 1e-7, 1e-13);
        worst = std::max(worst, std::abs(integral - 1.0));
      }
    }
    return worst;
  });

  runner.check("su2/act-unitarity", 1e-10, [&] {
    std::mt19937_64 rng(options.seed + 1);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const RepLevel level{3 + static_cast<int>(rng() % 58)};
      const RepVector v = random_unit_rep_vector(rng, level);
      const RepVector w = random_unit_rep_vector(rng, level);
      const SU2Element g = random_group_element(rng);
      worst = std::max(worst, std::abs(rep_inner(act(g, v), act(g, w)) - rep_inner(v, w)));
    }
    return worst;
  });

  runner.check("su2/act-homomorphism", 1e-10, [&] {
    std::mt19937_64 rng(options.seed + 2);
    double worst = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
      const RepLevel level{3 + static_cast<int>(rng() % 38)};
      const RepVector v = random_unit_rep_vector(rng, level);
      const SU2Element g1 = random_group_element(rng);
      const SU2Element g2 = random_group_element(rng);
      worst = std::max(worst, (act(g1 * g2, v) - act(g1, act(g2, v))).norm());
    }
    return worst;
  });

  runner.check("su2/wigner-row-unitarity", 1e-10, [&] {
    double worst = 0.0;
    for (int k : {4, 15, 31, 60})
      for (double beta : {0.3, 1.2, 2.8}) {
        const auto d = wigner_d_matrix(RepLevel{k}, beta);
        for (int i = 0; i <= k; ++i) {
          double row = 0.0, col = 0.0;
          for (int l = 0; l <= k; ++l) {
            row += d[i][l] * d[i][l];
            col += d[l][i] * d[l][i];
          }
          worst = std::max({worst, std::abs(row - 1.0), std::abs(col - 1.0)});
        }
      }
    return worst;
  });

  runner.check("su2/wigner-composition", 1e-9, [&] {
    double worst = 0.0;
    for (int k : {9, 40}) {
      const auto d1 = wigner_d_matrix(RepLevel{k}, 0.7);
      const auto d2 = wigner_d_matrix(RepLevel{k}, 0.9);
      const auto d12 = wigner_d_matrix(RepLevel{k}, 1.6);
      for (int i = 0; i <= k; ++i)
        for (int l = 0; l <= k; ++l) {
          double acc = 0.0;
          for (int r = 0; r <= k; ++r) acc += d1[i][r] * d2[r][l];
          worst = std::max(worst, std::abs(acc - d12[i][l]));
        }
    }
    return worst;
  });

  runner.check("su2/jz-generator", 1e-6, [&] {
    std::mt19937_64 rng(options.seed + 3);
    const double h = 1e-5;
    double worst = 0.0;
    for (int k : {8, 29}) {
      const RepLevel level{k};
      const RepVector v = random_unit_rep_vector(rng, level);
      const RepVector diff = complexd(0.5 / h, 0.0) *
                             (act(SU2Element::u_z(h), v) - act(SU2Element::u_z(-h), v));
      worst = std::max(worst, (diff - complexd(0.0, 1.0) * jz_apply(v)).norm());
    }
    return worst;
  });

  runner.check("su2/wigner-legendre", 1e-11, [&] {
    double worst = 0.0;
    for (int j : {5, 12, 25})
      for (double beta = 0.3; beta < 3.0; beta += 0.4) {
        const double d00 = wigner_d_exact(RepLevel{2 * j}, HalfInt(0), HalfInt(0), beta);
        worst = std::max(worst, std::abs(d00 - std::legendre(j, std::cos(beta))));
      }
    return worst;
  });

  runner.check("su2/evaluation-equivariance", 1e-10, [&] {
    std::mt19937_64 rng(options.seed + 4);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const RepLevel level{3 + static_cast<int>(rng() % 38)};
      const RepVector v = random_unit_rep_vector(rng, level);
      const SU2Element g = random_group_element(rng);
      const HopfPoint p = random_fibre_point(rng);
      worst = std::max(worst,
                       std::abs(evaluate_section(act(g, v), g.apply(p)) - evaluate_section(v, p)));
    }
    return worst;
  });

  // ---------------- lifts, holonomy, intersections ----------------

  runner.check("hopf/lift-horizontality", 1e-6, [&] {
    const Loop loops[] = {
        Loop::constant_height(0.37),
        Loop::rotated(SU2Element::u_y(1.1), Loop::constant_height(-0.52)),
        star_shaped_loop(1.0, {{{2.0, 0.2, 0.4}}, {{3.0, 0.1, 1.7}}})};
    double worst = 0.0;
    for (const Loop& loop : loops) {
      const LiftedLoop lift(loop);
      const double h = 1e-4;
      for (int i = 0; i < 24; ++i) {
        const double t = loop.period() * i / 24.0;
        worst = std::max(worst, std::abs(std::imag(hopf_inner(lift.at(t), lift.at(t + h)))));
      }
    }
    return worst;
  });

  runner.check("hopf/holonomy-area", 1e-8, [&] {
    std::mt19937_64 rng(options.seed + 5);
    std::uniform_real_distribution<double> uz(-0.95, 0.95);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const double z = uz(rng);
      const double area = TWO_PI * (1.0 - z);
      worst = std::max(worst, std::abs(holonomy(Loop::constant_height(z)) - cis(-0.5 * area)));
    }
    std::uniform_real_distribution<double> utheta(0.5, 1.4), uphase(0.0, TWO_PI);
    for (int trial = 0; trial < 10; ++trial) {
      const double theta0 = utheta(rng);
      const std::vector<std::array<double, 3>> harmonics = {
          {2.0, 0.06 * (1.0 + trial % 3), uphase(rng)}, {3.0, 0.05, uphase(rng)}};
      const double area = star_region_area(theta0, harmonics);
      worst = std::max(
          worst, std::abs(holonomy(star_shaped_loop(theta0, harmonics)) - cis(-0.5 * area)));
    }
    return worst;
  });

  runner.check("hopf/uz-transport", 1e-9, [&] {
    // transported section over the circle at colatitude theta, with the
    // phase sign flippable by the mutation hook
    const double sign = options.inject_lift_sign_flip ? 1.0 : -1.0;
    auto section = [sign](double theta, double phi) {
      const complexd phase = cis(sign * std::sin(0.5 * theta) * std::sin(0.5 * theta) * phi);
      return HopfPoint(phase * std::sin(0.5 * theta) * cis(phi),
                       phase * std::cos(0.5 * theta), 1e-9);
    };
    double worst = 0.0;
    for (double theta : {0.3 * PI, 0.62 * PI}) {
      const double z = std::cos(theta);
      for (double dphi : {0.7, 2.1})
        for (double phi : {0.0, 1.3, 5.9}) {
          const HopfPoint lhs = SU2Element::u_z(dphi).apply(section(theta, phi));
          HopfPoint rhs = section(theta, phi + dphi);
          rhs.q1 *= cis(-0.5 * z * dphi);
          rhs.q2 *= cis(-0.5 * z * dphi);
          worst = std::max(worst, fibre_distance(lhs, rhs));
        }
      // the section must also agree with the library's parallel lift
      const LiftedLoop lift(Loop::constant_height(z));
      for (double phi : {0.9, 2.7, 5.5})
        worst = std::max(
            worst, fibre_distance(lift.at(phi / TWO_PI * lift.period()), section(theta, phi)));
    }
    return worst;
  });

  runner.check("hopf/intersection-swap", 1e-9, [&] {
    const Loop gamma = constant_height_loop(50, HalfInt(22));
    const Loop sigma = Loop::rotated(SU2Element::u_y(1.2), constant_height_loop(50, HalfInt(-10)));
    const LiftedLoop lg(gamma), ls(sigma);
    const auto fwd = find_intersections(lg, ls);
    const auto rev = find_intersections(ls, lg);
    if (fwd.size() != rev.size() || fwd.empty()) return 1.0;
    double worst = 0.0;
    for (const IntersectionDatum& a : fwd) {
      double best = std::numeric_limits<double>::infinity();
      double defect = 1.0;
      for (const IntersectionDatum& b : rev) {
        const double dist = (a.x.n - b.x.n).norm();
        if (dist < best) {
          best = dist;
          defect = std::max({dist, std::abs(a.angle - b.angle),
                             std::abs(static_cast<double>(a.orientation + b.orientation)),
                             std::abs(a.omega - std::conj(b.omega)), std::abs(a.s - b.t),
                             std::abs(a.t - b.s)});
        }
      }
      worst = std::max(worst, defect);
    }
    return worst;
  });

  runner.check("hopf/rotation-equivariance", 1e-9, [&] {
    std::mt19937_64 rng(options.seed + 6);
    const Loop gamma = constant_height_loop(50, HalfInt(22));
    const Loop sigma = Loop::rotated(SU2Element::u_y(1.2), constant_height_loop(50, HalfInt(-10)));
    const auto base = find_intersections(gamma, sigma);
    const SU2Element g = random_group_element(rng);
    const Rotation3 rot = rotation_of(g);
    const auto moved = find_intersections(Loop::rotated(g, gamma), Loop::rotated(g, sigma));
    if (base.size() != moved.size() || base.empty()) return 1.0;
    double worst = 0.0;
    for (const IntersectionDatum& a : base) {
      const Vec3 target = rot.apply(a.x.n);
      double best = std::numeric_limits<double>::infinity();
      double defect = 1.0;
      for (const IntersectionDatum& b : moved) {
        const double dist = (target - b.x.n).norm();
        if (dist < best) {
          best = dist;
          defect = std::max({dist, std::abs(a.angle - b.angle),
                             std::abs(static_cast<double>(a.orientation - b.orientation))});
        }
      }
      worst = std::max(worst, defect);
    }
    return worst;
  });

  runner.check("hopf/bohr-sommerfeld-heights", 1e-8, [&] {
    double worst = 0.0;
    worst = std::max(worst, bs_defect(constant_height_loop(12, HalfInt(-6)), 12));
    worst = std::max(worst, bs_defect(constant_height_loop(25, HalfInt::of(8.5)), 25));
    worst = std::max(worst, bs_defect(constant_height_loop(50, HalfInt(22)), 50));
    // a detuned height must not pass the quantization test
    if (is_bohr_sommerfeld(Loop::constant_height(0.44 + 0.37 / 50.0), 50)) worst = 1.0;
    return worst;
  });

  // ---------------- coherent states ----------------

  runner.check("coherent/reproducing", 1e-10, [&] {
    std::mt19937_64 rng(options.seed + 7);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const RepLevel level{3 + static_cast<int>(rng() % 58)};
      const RepVector s = random_unit_rep_vector(rng, level);
      const HopfPoint p = random_fibre_point(rng);
      worst = std::max(
          worst, std::abs(rep_inner(coherent_state(level, p), s) - evaluate_section(s, p)));
    }
    return worst;
  });

  runner.check("coherent/basepoint-norm", 1e-10, [&] {
    std::mt19937_64 rng(options.seed + 8);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const RepLevel level{3 + static_cast<int>(rng() % 58)};
      const HopfPoint p = random_fibre_point(rng);
      const RepVector psi = coherent_state(level, p);
      worst = std::max(worst, std::abs(std::abs(evaluate_section(psi, p)) -
                                       rep_inner(psi, psi).real()));
    }
    return worst;
  });

  runner.check("coherent/peakedness", 1e-12, [&] {
    std::mt19937_64 rng(options.seed + 9);
    const RepLevel level{40};
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const HopfPoint p = random_fibre_point(rng);
      const RepVector psi = coherent_state(level, p);
      const double peak = std::abs(evaluate_section(psi, p)) / psi.norm();
      const RepVector s = random_unit_rep_vector(rng, level);
      worst = std::max(worst, std::abs(evaluate_section(s, p)) - peak);
    }
    return std::max(worst, 0.0);
  });

  runner.check("coherent/group-equivariance", 1e-10, [&] {
    std::mt19937_64 rng(options.seed + 10);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const RepLevel level{3 + static_cast<int>(rng() % 48)};
      const SU2Element g = random_group_element(rng);
      const HopfPoint p = random_fibre_point(rng);
      worst =
          std::max(worst, (act(g, coherent_state(level, p)) - coherent_state(level, g.apply(p)))
                              .norm());
    }
    return worst;
  });

  runner.check("coherent/eigenstate", 1e-10, [&] {
    double worst = 0.0;
    for (int k : {12, 25}) {
      const RepLevel level{k};
      for (const HalfInt m : {HalfInt::of(k == 12 ? 3.0 : 8.5), HalfInt::of(k == 12 ? -2.0 : 0.5)})
        for (double dphi : {0.8, 2.9}) {
          const RepVector psi = constant_height_state(level, m);
          const RepVector moved = act(SU2Element::u_z(dphi), psi);
          const RepVector expected = cis(m.value() * dphi) * psi;
          worst = std::max(worst, (moved - expected).norm() / psi.norm());
        }
    }
    return worst;
  });

  runner.check("coherent/exchange-identity", 1e-9, [&] {
    const RepLevel level{12};
    const LiftedLoop gamma(Loop::constant_height(0.5));
    const LiftedLoop sigma(Loop::rotated(SU2Element::u_y(1.1), Loop::constant_height(-1.0 / 3.0)));
    const complexd via_states =
        rep_inner(loop_state_quadrature(level, gamma), loop_state_quadrature(level, sigma));
    const int n = 384;
    complexd acc{0.0, 0.0};
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        acc += coherent_inner(level, gamma.at(i * gamma.period() / n),
                              sigma.at(l * sigma.period() / n));
    acc *= gamma.period() / n * sigma.period() / n;
    return std::abs(via_states - acc);
  });

  // ---------------- stationary phase ----------------

  runner.check("csp/real-phase-reduction", 1e-12, [&] {
    const int k = 7;
    TorusIntegrand ig;
    ig.phase = [](double s, double t) { return complexd(std::cos(s) + std::sin(t), 0.0); };
    ig.amplitude = [](double s, double t) { return complexd(1.3 + 0.2 * std::cos(s + t), 0.0); };
    const auto points = find_stationary_points(ig);
    if (points.size() != 4) return 1.0;
    complexd classical(0.0, 0.0);
    for (const CriticalPoint& p : points) {
      int signature = 0;
      double abs_det = 1.0;
      for (const complexd& lambda : p.eigenvalues) {
        if (std::abs(lambda.imag()) > 1e-12) return 1.0;
        signature += lambda.real() > 0.0 ? 1 : -1;
        abs_det *= std::abs(lambda);
      }
      classical += ig.amplitude(p.s, p.t) * cis(k * p.phase_value.real()) *
                   cis(0.25 * PI * signature) / std::sqrt(abs_det);
    }
    classical *= TWO_PI / k;
    return std::abs(csp_leading_term(k, ig, points) - classical) / std::abs(classical);
  });

  runner.check("csp/conjugation-symmetry", 1e-10, [&] {
    const int k = 40;
    const TorusIntegrand ig = equatorial_overlap_integrand(k, 0.8);
    TorusIntegrand conj_ig;
    conj_ig.oscillator = [osc = ig.oscillator](double s, double t) {
      return std::conj(osc(s, t));
    };
    conj_ig.phase = [ph = ig.phase](double s, double t) { return -std::conj(ph(s, t)); };
    conj_ig.amplitude = [amp = ig.amplitude](double s, double t) {
      return std::conj(amp(s, t));
    };
    const complexd oracle = quadrature_oracle(ig, k);
    const complexd oracle_c = quadrature_oracle(conj_ig, k);
    const complexd lead = csp_leading_term(k, ig, find_stationary_points(ig));
    const complexd lead_c = csp_leading_term(k, conj_ig, find_stationary_points(conj_ig));
    return std::max(std::abs(oracle_c - std::conj(oracle)), std::abs(lead_c - std::conj(lead)));
  });

  runner.check("csp/alpha-principal-argument", 1e-12, [&] {
    const auto points = find_stationary_points(equatorial_overlap_integrand(24, 1.1));
    if (points.empty()) return 1.0;
    double worst = 0.0;
    for (const CriticalPoint& p : points)
      for (int j = 0; j < 2; ++j) {
        const double expected = std::arg(complexd(0.0, -1.0) * p.eigenvalues[j]) + 0.5 * PI;
        worst = std::max(worst, std::abs(p.alphas[j] - expected));
      }
    return worst;
  });

  // ---------------- asymptotic formulas ----------------

  // seeded family of classically allowed configurations shared by the
  // route-agreement and phase-alignment invariants
  const auto allowed_samples = [&] {
    std::mt19937_64 rng(options.seed + 11);
    std::uniform_real_distribution<double> uz(-0.85, 0.85), ub(0.2, 2.9);
    std::vector<std::array<double, 4>> configs;  // k, 2*m1, 2*m2, beta
    while (configs.size() < 12) {
      const int k = 2 * (8 + static_cast<int>(rng() % 23));
      const HalfInt m1 = HalfInt::of(std::round(uz(rng) * k / 2.0));
      const HalfInt m2 = HalfInt::of(std::round(uz(rng) * k / 2.0));
      const double beta = ub(rng);
      const auto report = classically_allowed(HalfInt(k), m1, m2, beta);
      if (!report.allowed || report.margin < 0.02) continue;
      configs.push_back({static_cast<double>(k), static_cast<double>(m1.twice),
                         static_cast<double>(m2.twice), beta});
    }
    return configs;
  }();

  runner.check("asym/route-agreement", 1e-10, [&] {
    double worst = 0.0;
    for (const auto& c : allowed_samples) {
      const int k = static_cast<int>(c[0]);
      const HalfInt m1(static_cast<int>(c[1])), m2(static_cast<int>(c[2]));
      const AsymptoticResult r = wigner_d_asym(HalfInt(k), m1, m2, c[3]);
      const double theta1 = std::acos(2.0 * m1.value() / k);
      const double theta2 = std::acos(2.0 * m2.value() / k);
      const double via = symmetric_cosine_asym(k, r.ingredients.lune_area, r.ingredients.angle) /
                         std::sqrt(loop_state_norm_asym(k, theta1) *
                                   loop_state_norm_asym(k, theta2));
      worst = std::max(worst, std::abs(via - r.value));
    }
    return worst;
  });

  runner.check("asym/phase-alignment", 1e-8, [&] {
    double worst = 0.0;
    for (const auto& c : allowed_samples) {
      const AsymptoticResult r =
          wigner_d_asym(HalfInt(static_cast<int>(c[0])), HalfInt(static_cast<int>(c[1])),
                        HalfInt(static_cast<int>(c[2])), c[3]);
      worst = std::max(worst, r.ingredients.phase_alignment_defect);
    }
    return worst;
  });

  runner.check("asym/flip-symmetry", 1e-10, [&] {
    double worst = 0.0;
    const std::array<std::array<int, 3>, 2> configs = {{{50, 22, 44}, {36, -8, 20}}};
    const std::array<double, 2> betas = {1.4, 1.1};
    for (int i = 0; i < 2; ++i) {
      const int k = configs[i][0];
      const HalfInt m1(configs[i][1]), m2(configs[i][2]);
      const HalfInt f1(-configs[i][1]), f2(-configs[i][2]);
      const double beta = betas[i];
      const AsymptoticResult r = wigner_d_asym(HalfInt(k), m1, m2, beta);
      const AsymptoticResult rf = wigner_d_asym(HalfInt(k), f1, f2, beta);
      const double sign = ((m2.twice - m1.twice) / 2) % 2 == 0 ? 1.0 : -1.0;
      worst = std::max({worst, std::abs(r.ingredients.angle - rf.ingredients.angle),
                        std::abs(r.ingredients.volume - rf.ingredients.volume),
                        std::abs(rf.value - sign * r.value)});
      const double exact = wigner_d_exact(RepLevel{k}, m2, m1, beta);
      const double exact_f = wigner_d_exact(RepLevel{k}, f2, f1, beta);
      worst = std::max(worst, std::abs(exact_f - sign * exact));
    }
    return worst;
  });

  runner.check("asym/equator-reduction", 1e-10, [&] {
    double worst = 0.0;
    for (int k : {20, 34})
      for (double beta : {0.7, 1.3}) {
        const AsymptoticResult r = wigner_d_asym(HalfInt(k), HalfInt(0), HalfInt(0), beta);
        worst = std::max(worst, std::abs(r.value - wigner_d00_asym(k, beta)));
      }
    return worst;
  });

  return runner.reports;
}

}  // namespace cohloop
