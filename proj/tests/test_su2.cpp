#include "doctest.h"

#include <cmath>

#include "cohloop/su2.hpp"
#include "oracles.hpp"

using namespace cohloop;

namespace {

double rel_err(complexd got, complexd want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

double coeff_distance(const RepVector& v, const RepVector& w) {
  double s = 0.0;
  for (int a = 0; a < v.dim(); ++a) s = std::max(s, std::abs(v[a] - w[a]));
  return s;
}

}  // namespace

TEST_SUITE("su2") {

TEST_CASE("half integers and weight indices") {
  CHECK(HalfInt::of(0.5).twice == 1);
  CHECK(HalfInt::of(-3.0).twice == -6);
  CHECK_THROWS_AS(HalfInt::of(0.26), std::invalid_argument);

  const RepLevel level(4);
  CHECK(level.dim() == 5);
  CHECK(level.j() == doctest::Approx(2.0));
  CHECK(weight_index(level, HalfInt(4)) == 0);    // m = +j
  CHECK(weight_index(level, HalfInt(-4)) == 4);   // m = -j
  CHECK(weight_index(level, HalfInt(0)) == 2);
  CHECK(magnetic_number(level, 1).twice == 2);
  CHECK_THROWS_AS(weight_index(level, HalfInt(1)), std::invalid_argument);  // wrong parity
  CHECK_THROWS_AS(weight_index(level, HalfInt(6)), std::invalid_argument);  // out of range
  CHECK_THROWS_AS(RepLevel(-1), std::invalid_argument);
}

TEST_CASE("basis normalization constants") {
  // Frozen reference values sqrt((k+1)/(2 pi) C(k, a)).
  CHECK(basis_norm_coeff(RepLevel(0), 0) == doctest::Approx(0.39894228040143267).epsilon(1e-14));
  CHECK(basis_norm_coeff(RepLevel(1), 0) == doctest::Approx(0.56418958354775628).epsilon(1e-14));
  CHECK(basis_norm_coeff(RepLevel(2), 1) == doctest::Approx(0.97720502380583984).epsilon(1e-14));
  // Stays finite far beyond where C(k, a) overflows.
  const double logn = log_basis_norm_coeff(RepLevel(400), 200);
  CHECK(std::isfinite(logn));
  CHECK(logn > 100.0);
}

TEST_CASE("monomial basis values resolve the identity pointwise") {
  // sum_a |e_a[p]|^2 = (k+1)/(2 pi) for every fibre point p.
  auto rng = oracles::seeded_rng(11);
  for (int k : {1, 5, 60, 200}) {
    const RepLevel level(k);
    for (int trial = 0; trial < 5; ++trial) {
      const HopfPoint p = oracles::random_hopf_point(rng);
      const auto values = monomial_basis_values(level, p);
      double sum = 0.0;
      for (const auto& v : values) sum += std::norm(v);
      CHECK(sum == doctest::Approx((k + 1) / TWO_PI).epsilon(1e-12));
    }
  }
}

TEST_CASE("monomial basis values at a pole") {
  // Over the +z pole only the top-weight section survives.
  const HopfPoint north(complexd(0.0, 0.0), complexd(1.0, 0.0));
  const auto values = monomial_basis_values(RepLevel(6), north);
  CHECK(std::abs(values[0]) == doctest::Approx(basis_norm_coeff(RepLevel(6), 0)).epsilon(1e-14));
  for (int a = 1; a <= 6; ++a) CHECK(std::abs(values[a]) == doctest::Approx(0.0));
}

TEST_CASE("section evaluation is linear in the coefficients") {
  auto rng = oracles::seeded_rng(12);
  const RepLevel level(9);
  const RepVector v = oracles::random_rep_vector(rng, level);
  const RepVector w = oracles::random_rep_vector(rng, level);
  const HopfPoint p = oracles::random_hopf_point(rng);
  const complexd s(0.3, -1.7);
  const complexd lhs = evaluate_section(v + s * w, p);
  const complexd rhs = evaluate_section(v, p) + s * evaluate_section(w, p);
  CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
}

TEST_CASE("rep inner product") {
  const RepLevel level(5);
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 5; ++b) {
      const complexd ip = rep_inner(RepVector::basis(level, a), RepVector::basis(level, b));
      CHECK(std::abs(ip - (a == b ? complexd(1.0, 0.0) : complexd(0.0, 0.0))) < 1e-15);
    }
  auto rng = oracles::seeded_rng(13);
  const RepVector v = oracles::random_rep_vector(rng, level);
  const RepVector w = oracles::random_rep_vector(rng, level);
  CHECK(std::abs(rep_inner(v, w) - std::conj(rep_inner(w, v))) < 1e-14);
  CHECK_THROWS_AS(rep_inner(v, RepVector(RepLevel(4))), std::invalid_argument);
}

TEST_CASE("su2 element algebra") {
  const SU2Element g = SU2Element::u_z(0.7) * SU2Element::u_y(1.1) * SU2Element::u_z(-2.3);
  const SU2Element gi = g.inverse();
  const SU2Element id = g * gi;
  CHECK(std::abs(id.m00() - complexd(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(id.m01()) < 1e-15);

  // axis-angle about z matches the diagonal one-parameter subgroup
  const SU2Element az = SU2Element::axis_angle({0.0, 0.0, 1.0}, 0.9);
  CHECK(std::abs(az.m00() - SU2Element::u_z(0.9).m00()) < 1e-15);
  CHECK(std::abs(az.m01() - SU2Element::u_z(0.9).m01()) < 1e-15);

  CHECK_THROWS_AS(SU2Element::from_matrix(complexd(1.0), complexd(0.1), complexd(0.0), complexd(1.0)),
                  std::invalid_argument);
}

TEST_CASE("fibre action covers the rotation action") {
  auto rng = oracles::seeded_rng(14);
  // one-parameter subgroups project onto the matching rotations
  const Rotation3 rz = rotation_of(SU2Element::u_z(0.8));
  const Rotation3 rz_ref = Rotation3::rot_z(0.8);
  const Rotation3 ry = rotation_of(SU2Element::u_y(1.3));
  const Rotation3 ry_ref = Rotation3::rot_y(1.3);
  for (int trial = 0; trial < 4; ++trial) {
    const Vec3 n = oracles::random_unit_vector(rng);
    CHECK((rz.apply(n) - rz_ref.apply(n)).norm() < 1e-12);
    CHECK((ry.apply(n) - ry_ref.apply(n)).norm() < 1e-12);
  }
  // general elements: projecting the fibre action equals rotating the projection
  for (int trial = 0; trial < 20; ++trial) {
    const SU2Element g = oracles::random_su2(rng);
    const HopfPoint p = oracles::random_hopf_point(rng);
    const Vec3 lhs = g.apply(p).project_vector();
    const Vec3 rhs = rotation_of(g).apply(p.project_vector());
    CHECK((lhs - rhs).norm() < 1e-12);
  }
  // axis-angle elements project onto the same axis-angle rotation
  for (int trial = 0; trial < 10; ++trial) {
    const Vec3 axis = oracles::random_unit_vector(rng);
    const double chi = oracles::uniform(rng, 0.0, TWO_PI);
    const Rotation3 got = rotation_of(SU2Element::axis_angle(axis, chi));
    const Rotation3 want = Rotation3::axis_angle(axis, chi);
    const Vec3 probe = oracles::random_unit_vector(rng);
    CHECK((got.apply(probe) - want.apply(probe)).norm() < 1e-12);
  }
}

TEST_CASE("action satisfies the defining substitution property") {
  // (g . s)[g p] = s[p] for sections s and fibre points p.
  auto rng = oracles::seeded_rng(15);
  for (int k : {1, 2, 7, 24, 61}) {
    const RepLevel level(k);
    for (int trial = 0; trial < 6; ++trial) {
      const SU2Element g = oracles::random_su2(rng);
      const RepVector v = oracles::random_rep_vector(rng, level);
      const HopfPoint p = oracles::random_hopf_point(rng);
      const complexd lhs = evaluate_section(act(g, v), g.apply(p));
      const complexd rhs = evaluate_section(v, p);
      CHECK(std::abs(lhs - rhs) < 1e-10 * std::sqrt((k + 1) / TWO_PI));
    }
  }
}

TEST_CASE("action matches the binomial substitution oracle at small level") {
  auto rng = oracles::seeded_rng(16);
  for (int k : {1, 3, 8, 14, 20}) {
    const RepLevel level(k);
    for (int trial = 0; trial < 5; ++trial) {
      const SU2Element g = oracles::random_su2(rng);
      const RepVector v = oracles::random_rep_vector(rng, level);
      const RepVector got = act(g, v);
      const RepVector want = oracles::act_by_substitution(g, v);
      CHECK(coeff_distance(got, want) < 1e-11);
    }
  }
}

TEST_CASE("action is a unitary representation") {
  auto rng = oracles::seeded_rng(17);
  const RepLevel level(40);
  for (int trial = 0; trial < 8; ++trial) {
    const SU2Element g1 = oracles::random_su2(rng);
    const SU2Element g2 = oracles::random_su2(rng);
    const RepVector v = oracles::random_rep_vector(rng, level);
    CHECK(act(g1, v).norm() == doctest::Approx(1.0).epsilon(1e-12));
    const RepVector composed = act(g1 * g2, v);
    const RepVector stacked = act(g1, act(g2, v));
    CHECK(coeff_distance(composed, stacked) < 1e-11);
    const RepVector roundtrip = act(g1.inverse(), act(g1, v));
    CHECK(coeff_distance(roundtrip, v) < 1e-11);
  }
}

TEST_CASE("action stays accurate at large level") {
  // The defining property, checked where naive binomial expansion has long
  // since lost all precision.
  auto rng = oracles::seeded_rng(18);
  const RepLevel level(200);
  for (int trial = 0; trial < 4; ++trial) {
    const SU2Element g = oracles::random_su2(rng);
    const RepVector v = oracles::random_rep_vector(rng, level);
    const HopfPoint p = oracles::random_hopf_point(rng);
    const complexd lhs = evaluate_section(act(g, v), g.apply(p));
    const complexd rhs = evaluate_section(v, p);
    CHECK(std::abs(lhs - rhs) < 1e-9 * std::sqrt((level.k + 1) / TWO_PI));
    CHECK(act(g, v).norm() == doctest::Approx(1.0).epsilon(1e-11));
  }
}

TEST_CASE("diagonal subgroup acts by weight phases") {
  const RepLevel level(7);
  auto rng = oracles::seeded_rng(19);
  const RepVector v = oracles::random_rep_vector(rng, level);
  const double phi = 1.234;
  const RepVector got = act(SU2Element::u_z(phi), v);
  for (int a = 0; a <= level.k; ++a) {
    const complexd want = v[a] * cis(0.5 * (level.k - 2 * a) * phi);
    CHECK(std::abs(got[a] - want) < 1e-13);
  }
}

TEST_CASE("angular momentum about z") {
  const RepLevel level(6);
  for (int a = 0; a <= 6; ++a) {
    const RepVector v = jz_apply(RepVector::basis(level, a));
    CHECK(std::abs(v[a] - complexd(0.5 * (6 - 2 * a), 0.0)) < 1e-15);
  }
}

TEST_CASE("rotation matrix elements at spin one half") {
  const RepLevel level(1);
  const double beta = 0.77;
  CHECK(wigner_d_exact(level, HalfInt(1), HalfInt(1), beta) ==
        doctest::Approx(std::cos(0.5 * beta)).epsilon(1e-13));
  CHECK(wigner_d_exact(level, HalfInt(1), HalfInt(-1), beta) ==
        doctest::Approx(-std::sin(0.5 * beta)).epsilon(1e-13));
  CHECK(wigner_d_exact(level, HalfInt(-1), HalfInt(1), beta) ==
        doctest::Approx(std::sin(0.5 * beta)).epsilon(1e-13));
  CHECK(wigner_d_exact(level, HalfInt(-1), HalfInt(-1), beta) ==
        doctest::Approx(std::cos(0.5 * beta)).epsilon(1e-13));
}

TEST_CASE("central rotation matrix element is a Legendre polynomial") {
  for (int k : {2, 4, 10, 36, 60}) {
    const RepLevel level(k);
    for (double beta : {0.2, 0.9, 1.5707963267948966, 2.6}) {
      const double got = wigner_d_exact(level, HalfInt(0), HalfInt(0), beta);
      const double want = oracles::legendre_p(k / 2, std::cos(beta));
      CHECK(got == doctest::Approx(want).epsilon(1e-10));
    }
  }
}

TEST_CASE("rotation matrix elements agree with the action") {
  auto rng = oracles::seeded_rng(20);
  for (int k : {1, 2, 9, 30}) {
    const RepLevel level(k);
    const double beta = oracles::uniform(rng, 0.1, PI - 0.1);
    const auto d = wigner_d_matrix(level, beta);
    for (int a1 = 0; a1 <= k; ++a1) {
      const RepVector rotated = act(SU2Element::u_y(beta), RepVector::basis(level, a1));
      double row_sq = 0.0;
      for (int a2 = 0; a2 <= k; ++a2) {
        CHECK(std::abs(rotated[a2] - complexd(d[a2][a1], 0.0)) < 1e-12);
        CHECK(d[a2][a1] == doctest::Approx(wigner_d_exact(level, magnetic_number(level, a2),
                                                          magnetic_number(level, a1), beta))
                               .epsilon(1e-12));
        row_sq += d[a2][a1] * d[a2][a1];
      }
      CHECK(row_sq == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("rotation matrix symmetry under weight reversal") {
  // d_{m2, m1} = (-1)^(m2 - m1) d_{-m2, -m1}
  const RepLevel level(50);
  const double beta = 1.1;
  for (auto [m2, m1] : {std::pair{22, 11}, {10, -4}, {-8, 6}}) {
    const double plus = wigner_d_exact(level, HalfInt(2 * m2), HalfInt(2 * m1), beta);
    const double minus = wigner_d_exact(level, HalfInt(-2 * m2), HalfInt(-2 * m1), beta);
    const double sign = ((m2 - m1) % 2 == 0) ? 1.0 : -1.0;
    CHECK(plus == doctest::Approx(sign * minus).epsilon(1e-10));
  }
}

TEST_CASE("relative error helper sanity") {
  CHECK(rel_err(complexd(1.0, 0.0), complexd(1.0, 0.0)) == doctest::Approx(0.0));
}

}  // TEST_SUITE
