#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "cohloop/stationary_phase.hpp"
#include "doctest.h"

using namespace cohloop;

namespace {

// Phase of the equatorial loop-overlap integral in angle coordinates:
// w(s,t) = cos(b/2) cos((s-t)/2) + i sin(b/2) sin((s+t)/2), S = -i log w,
// amplitude (k+1)/(4 pi).
TorusIntegrand equatorial_integrand(int k, double beta, bool analytic_derivatives = false) {
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
  if (analytic_derivatives) {
    auto w_s = [ch, sh](double s, double t) {
      return complexd(-0.5 * ch * std::sin(0.5 * (s - t)), 0.5 * sh * std::cos(0.5 * (s + t)));
    };
    auto w_t = [ch, sh](double s, double t) {
      return complexd(0.5 * ch * std::sin(0.5 * (s - t)), 0.5 * sh * std::cos(0.5 * (s + t)));
    };
    const auto osc = ig.oscillator;
    ig.gradient = [osc, w_s, w_t](double s, double t) -> std::array<complexd, 2> {
      const complexd w = osc(s, t);
      const complexd mi(0.0, -1.0);
      return {mi * w_s(s, t) / w, mi * w_t(s, t) / w};
    };
    ig.hessian = [osc, w_s, w_t, ch, sh](double s, double t) -> std::array<complexd, 4> {
      const complexd w = osc(s, t);
      const complexd w_ss = -0.25 * w;  // also equals w_tt
      const complexd w_st(0.25 * ch * std::cos(0.5 * (s - t)),
                          -0.25 * sh * std::sin(0.5 * (s + t)));
      const complexd a = w_s(s, t), b = w_t(s, t);
      const complexd mi(0.0, -1.0);
      const complexd ss = mi * (w_ss / w - a * a / (w * w));
      const complexd st = mi * (w_st / w - a * b / (w * w));
      const complexd tt = mi * (w_ss / w - b * b / (w * w));
      return {ss, st, st, tt};
    };
  }
  return ig;
}

std::array<complexd, 4> reference_hessian(double beta) {
  const complexd quarter_i(0.0, 0.25);
  const complexd off = -quarter_i * cis(-beta);
  return {quarter_i, off, off, quarter_i};
}

}  // namespace

TEST_SUITE_BEGIN("stationary_phase");

TEST_CASE("equatorial phase: stationary points and Hessian by finite differences") {
  const double beta = 1.0;
  const TorusIntegrand ig = equatorial_integrand(60, beta);
  const auto points = find_stationary_points(ig);
  REQUIRE(points.size() == 2);

  CHECK(points[0].s == doctest::Approx(0.5 * PI).epsilon(1e-9));
  CHECK(points[0].t == doctest::Approx(0.5 * PI).epsilon(1e-9));
  CHECK(points[1].s == doctest::Approx(1.5 * PI).epsilon(1e-9));
  CHECK(points[1].t == doctest::Approx(1.5 * PI).epsilon(1e-9));
  CHECK(points[0].phase_value.real() == doctest::Approx(0.5 * beta).epsilon(1e-10));
  CHECK(points[1].phase_value.real() == doctest::Approx(-0.5 * beta).epsilon(1e-10));
  CHECK(std::abs(points[0].phase_value.imag()) < 1e-10);

  const auto expected = reference_hessian(beta);
  for (int e = 0; e < 4; ++e) CHECK(std::abs(points[0].hessian[e] - expected[e]) < 5e-9);

  // eigenvalue pair {sin(b/2)/2 e^{i(pi-b/2)}, cos(b/2)/2 e^{i(pi/2-b/2)}}
  const complexd l1 = 0.5 * std::sin(0.5 * beta) * cis(PI - 0.5 * beta);
  const complexd l2 = 0.5 * std::cos(0.5 * beta) * cis(0.5 * PI - 0.5 * beta);
  const auto& eig = points[0].eigenvalues;
  const double match_a = std::abs(eig[0] - l1) + std::abs(eig[1] - l2);
  const double match_b = std::abs(eig[0] - l2) + std::abs(eig[1] - l1);
  CHECK(std::min(match_a, match_b) < 1e-8);
  CHECK(std::abs(eig[0] * eig[1]) == doctest::Approx(std::sin(beta) / 8.0).epsilon(1e-8));

  double alpha_lo = std::min(points[0].alphas[0], points[0].alphas[1]);
  double alpha_hi = std::max(points[0].alphas[0], points[0].alphas[1]);
  CHECK(alpha_lo == doctest::Approx(0.5 * PI - 0.5 * beta).epsilon(1e-8));
  CHECK(alpha_hi == doctest::Approx(PI - 0.5 * beta).epsilon(1e-8));
}

TEST_CASE("analytic derivative callbacks match the finite differences") {
  const double beta = 1.3;
  const TorusIntegrand fd = equatorial_integrand(40, beta);
  const TorusIntegrand exact = equatorial_integrand(40, beta, true);

  const auto points = find_stationary_points(exact);
  REQUIRE(points.size() == 2);
  CHECK(std::abs(points[0].s - 0.5 * PI) < 1e-12);
  CHECK(std::abs(points[0].t - 0.5 * PI) < 1e-12);
  const auto expected = reference_hessian(beta);
  for (int e = 0; e < 4; ++e) CHECK(std::abs(points[0].hessian[e] - expected[e]) < 1e-13);

  // the difference engine agrees with the closed-form derivatives away
  // from the stationary set as well
  const auto fd_points = find_stationary_points(fd);
  REQUIRE(fd_points.size() == 2);
  for (int e = 0; e < 4; ++e)
    CHECK(std::abs(fd_points[0].hessian[e] - points[0].hessian[e]) < 5e-9);
}

TEST_CASE("principal arguments track the eigenvalues of the rotated Hessian") {
  const TorusIntegrand ig = equatorial_integrand(30, 0.9);
  for (const CriticalPoint& p : find_stationary_points(ig)) {
    for (int j = 0; j < 2; ++j) {
      const complexd lambda_phi = complexd(0.0, -1.0) * p.eigenvalues[j];
      CHECK(std::abs(lambda_phi.real()) > 0.0);
      CHECK(std::arg(lambda_phi) > -0.5 * PI);
      CHECK(std::arg(lambda_phi) < 0.5 * PI);
      CHECK(p.alphas[j] == doctest::Approx(std::arg(lambda_phi) + 0.5 * PI).epsilon(1e-12));
    }
  }
}

TEST_CASE("leading term reproduces the closed equatorial asymptotics") {
  const int k = 60;
  const double beta = 1.0;
  const TorusIntegrand ig = equatorial_integrand(k, beta);
  const complexd value = csp_leading_term(k, ig, find_stationary_points(ig));
  const double closed = 2.0 * std::sqrt(2.0) * (k + 1.0) / k *
                        std::cos(0.5 * (k + 1) * beta - 0.25 * PI) / std::sqrt(std::sin(beta));
  CHECK(std::abs(value - closed) < 1e-8 * std::abs(closed));
  CHECK(std::abs(value.imag()) < 1e-10);
}

TEST_CASE("Gaussian phase: exact value and oracle agreement") {
  TorusIntegrand ig;
  ig.phase = [](double s, double t) {
    const double ds = s - PI, dt = t - PI;
    return complexd(0.0, ds * ds + dt * dt);  // S = i((s-pi)^2 + (t-pi)^2)
  };
  ig.amplitude = [](double, double) { return complexd(1.0, 0.0); };

  const auto points = find_stationary_points(ig);
  REQUIRE(points.size() == 1);
  CHECK(std::abs(points[0].s - PI) < 1e-10);
  CHECK(std::abs(points[0].t - PI) < 1e-10);
  CHECK(std::abs(points[0].eigenvalues[0] - complexd(0.0, 2.0)) < 1e-8);
  CHECK(std::abs(points[0].eigenvalues[1] - complexd(0.0, 2.0)) < 1e-8);

  for (int k : {50, 128}) {
    const complexd lead = csp_leading_term(k, ig, points);
    CHECK(std::abs(lead - PI / k) < 1e-10 / k);
    const complexd oracle = quadrature_oracle(ig, k);
    CHECK(std::abs(oracle - lead) < 1e-9);
  }
}

TEST_CASE("real phase reduces to the classical signature formula") {
  const int k = 7;
  TorusIntegrand ig;
  ig.phase = [](double s, double t) { return complexd(std::cos(s) + std::sin(t), 0.0); };
  ig.amplitude = [](double s, double t) { return complexd(1.3 + 0.2 * std::cos(s + t), 0.0); };

  const auto points = find_stationary_points(ig);
  REQUIRE(points.size() == 4);

  complexd classical(0.0, 0.0);
  for (const CriticalPoint& p : points) {
    // real symmetric Hessian: signature from the (real) eigenvalues
    int signature = 0;
    double abs_det = 1.0;
    for (const complexd& lambda : p.eigenvalues) {
      CHECK(std::abs(lambda.imag()) < 1e-12);
      signature += lambda.real() > 0.0 ? 1 : -1;
      abs_det *= std::abs(lambda);
    }
    classical += ig.amplitude(p.s, p.t) * cis(k * p.phase_value.real()) *
                 cis(0.25 * PI * signature) / std::sqrt(abs_det);
  }
  classical *= TWO_PI / k;
  const complexd value = csp_leading_term(k, ig, points);
  CHECK(std::abs(value - classical) < 1e-12 * std::abs(classical));
}

TEST_CASE("constant integrand integrates to the torus area") {
  TorusIntegrand ig;
  ig.phase = [](double, double) { return complexd(0.0, 0.0); };
  ig.amplitude = [](double, double) { return complexd(1.0, 0.0); };
  ig.period_s = 3.5;
  ig.period_t = 1.25;
  CHECK(std::abs(quadrature_oracle(ig, 17) - complexd(3.5 * 1.25, 0.0)) < 1e-12);
}

TEST_CASE("conjugating the integrand conjugates oracle and leading term") {
  const int k = 40;
  const TorusIntegrand ig = equatorial_integrand(k, 0.8);
  TorusIntegrand conj_ig;
  conj_ig.oscillator = [osc = ig.oscillator](double s, double t) {
    return std::conj(osc(s, t));
  };
  conj_ig.phase = [ph = ig.phase](double s, double t) { return -std::conj(ph(s, t)); };
  conj_ig.amplitude = [amp = ig.amplitude](double s, double t) {
    return std::conj(amp(s, t));
  };

  const int nodes = k / 2 + 16;
  CHECK(std::abs(quadrature_oracle(conj_ig, k, nodes) -
                 std::conj(quadrature_oracle(ig, k, nodes))) < 1e-12);
  const complexd lead = csp_leading_term(k, ig, find_stationary_points(ig));
  const complexd conj_lead = csp_leading_term(k, conj_ig, find_stationary_points(conj_ig));
  CHECK(std::abs(conj_lead - std::conj(lead)) < 1e-10);
}

TEST_CASE("oracle and leading term converge together as k doubles") {
  const double beta = 1.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int k : {50, 100, 200, 400}) {
    const TorusIntegrand ig = equatorial_integrand(k, beta);
    const complexd lead = csp_leading_term(k, ig, find_stationary_points(ig));
    const complexd oracle = quadrature_oracle(ig, k, k / 2 + 16);
    const double scaled = std::abs(lead - oracle) * std::sqrt(static_cast<double>(k));
    CHECK(scaled < 1.15 * previous);
    previous = scaled;
  }
}

TEST_SUITE_END();
