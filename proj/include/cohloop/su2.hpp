#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "cohloop/numeric.hpp"
#include "cohloop/sphere.hpp"

namespace cohloop {

/// Level of the irreducible representation carried by degree-k homogeneous
/// polynomials in two complex variables.  The spin is j = k/2 and the
/// dimension is k + 1.
struct RepLevel {
  int k = 0;

  RepLevel() = default;
  explicit RepLevel(int level) : k(level) {
    if (level < 0) throw std::invalid_argument("RepLevel: level must be nonnegative");
  }
  int dim() const { return k + 1; }
  double j() const { return 0.5 * k; }

  bool operator==(const RepLevel& o) const { return k == o.k; }
};

/// Half-integer stored exactly as twice its value.
struct HalfInt {
  int twice = 0;

  HalfInt() = default;
  explicit HalfInt(int twice_value) : twice(twice_value) {}

  static HalfInt of(double v) {
    const double tv = 2.0 * v;
    const long r = std::lround(tv);
    if (std::abs(tv - static_cast<double>(r)) > 1e-9)
      throw std::invalid_argument("HalfInt: value is not a half-integer");
    return HalfInt(static_cast<int>(r));
  }
  double value() const { return 0.5 * twice; }
  bool operator==(const HalfInt& o) const { return twice == o.twice; }
};

/// Weight-basis index a = j - m for magnetic number m at the given level.
/// Throws if m is outside [-j, j] or has the wrong parity for the level.
inline int weight_index(RepLevel level, HalfInt m) {
  const int a2 = level.k - m.twice;
  if (a2 < 0 || a2 > 2 * level.k || a2 % 2 != 0)
    throw std::invalid_argument("weight_index: m invalid for this level");
  return a2 / 2;
}

inline HalfInt magnetic_number(RepLevel level, int a) {
  if (a < 0 || a > level.k) throw std::invalid_argument("magnetic_number: index out of range");
  return HalfInt(level.k - 2 * a);
}

/// Element of SU(2), stored through the top row (a, b) of the matrix
/// [[a, b], [-conj(b), conj(a)]] with |a|^2 + |b|^2 = 1.
class SU2Element {
 public:
  SU2Element() : a_(1.0, 0.0), b_(0.0, 0.0) {}

  /// Validates that the supplied 2x2 matrix is unitary with determinant one
  /// (tolerance 1e-12) and projects it onto the canonical form.
  static SU2Element from_matrix(complexd m00, complexd m01, complexd m10, complexd m11);

  static SU2Element identity() { return SU2Element(); }
  static SU2Element u_z(double phi) { return SU2Element(cis(0.5 * phi), complexd(0.0, 0.0)); }
  static SU2Element u_y(double beta) {
    return SU2Element(complexd(std::cos(0.5 * beta), 0.0), complexd(std::sin(0.5 * beta), 0.0));
  }
  /// The element covering the rotation about `axis` by `chi`: projecting its
  /// fibre action through the Hopf map gives Rotation3::axis_angle(axis, chi).
  static SU2Element axis_angle(const Vec3& axis, double chi);

  complexd m00() const { return a_; }
  complexd m01() const { return b_; }
  complexd m10() const { return -std::conj(b_); }
  complexd m11() const { return std::conj(a_); }

  SU2Element operator*(const SU2Element& o) const {
    return SU2Element(a_ * o.a_ + b_ * o.m10(), a_ * o.b_ + b_ * o.m11());
  }
  SU2Element inverse() const { return SU2Element(std::conj(a_), -b_); }

  HopfPoint apply(const HopfPoint& p) const {
    HopfPoint r;
    r.q1 = a_ * p.q1 + b_ * p.q2;
    r.q2 = m10() * p.q1 + m11() * p.q2;
    return r;
  }

 private:
  SU2Element(complexd a, complexd b) : a_(a), b_(b) {}
  complexd a_, b_;
};

/// Rotation of the base sphere induced by g through the Hopf projection.
Rotation3 rotation_of(const SU2Element& g);

/// Vector in the level-k representation, stored in the orthonormal weight
/// basis e_0, ..., e_k (e_a is the normalized monomial Q1^a Q2^(k-a), and
/// carries magnetic number m = k/2 - a).
class RepVector {
 public:
  explicit RepVector(RepLevel level) : level_(level), c_(level.dim(), complexd(0.0, 0.0)) {}

  static RepVector basis(RepLevel level, int a) {
    RepVector v(level);
    if (a < 0 || a > level.k) throw std::invalid_argument("RepVector::basis: index out of range");
    v.c_[a] = complexd(1.0, 0.0);
    return v;
  }

  RepLevel level() const { return level_; }
  int dim() const { return level_.dim(); }
  const complexd& operator[](int a) const { return c_.at(a); }
  complexd& operator[](int a) { return c_.at(a); }
  const std::vector<complexd>& coeffs() const { return c_; }

  RepVector& operator+=(const RepVector& o);
  RepVector& operator-=(const RepVector& o);
  RepVector& operator*=(complexd s);
  friend RepVector operator+(RepVector a, const RepVector& b) { return a += b; }
  friend RepVector operator-(RepVector a, const RepVector& b) { return a -= b; }
  friend RepVector operator*(complexd s, RepVector v) { return v *= s; }

  double norm() const;

 private:
  RepLevel level_;
  std::vector<complexd> c_;
};

/// Normalization constant of the weight basis section e_a, equal to
/// sqrt((k+1)/(2*pi) * C(k, a)).
double basis_norm_coeff(RepLevel level, int a);
double log_basis_norm_coeff(RepLevel level, int a);

/// Values e_a[p] of all weight basis sections on the fibre point p,
/// evaluated in log space so large levels do not overflow.
std::vector<complexd> monomial_basis_values(RepLevel level, const HopfPoint& p);

/// Evaluation s[p] of the section with coefficient vector v against the
/// rank-k tensor power of the fibre point p.
complexd evaluate_section(const RepVector& v, const HopfPoint& p);

/// Hermitian inner product, antilinear in the first argument.
complexd rep_inner(const RepVector& v, const RepVector& w);

/// Action of g on sections, (g . s)[p] = s[g^(-1) p].  Implemented through
/// the Euler factorization g = U_z(alpha) U_y(beta) U_z(gamma): the z-factors
/// act diagonally and the y-factor is applied through a cached
/// eigendecomposition of the tridiagonal generator, which stays numerically
/// stable at levels where direct binomial expansion of the substitution
/// cancels catastrophically.
RepVector act(const SU2Element& g, const RepVector& v);

/// Angular momentum about z: multiplies the weight-a coefficient by k/2 - a.
RepVector jz_apply(const RepVector& v);

/// Matrix element <e(m2), U_y(beta) e(m1)> of the active y-rotation.  The
/// result is real; the imaginary part is checked against 1e-10 and dropped.
double wigner_d_exact(RepLevel level, HalfInt m2, HalfInt m1, double beta);

/// Full matrix of U_y(beta) in the weight basis, indexed [a2][a1].
std::vector<std::vector<double>> wigner_d_matrix(RepLevel level, double beta);

}  // namespace cohloop
