#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "cohloop/numeric.hpp"

namespace cohloop {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::invalid_argument("Vec3: cannot normalize zero vector");
    return *this / n;
  }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// Point on the unit sphere.  Stores both the unit vector and spherical
/// coordinates: colatitude theta in [0, pi], longitude phi in [0, 2*pi).
struct SpherePoint {
  double theta = 0.0;
  double phi = 0.0;
  Vec3 n{0.0, 0.0, 1.0};

  static SpherePoint from_angles(double theta, double phi) {
    if (theta < 0.0 || theta > PI) throw std::invalid_argument("SpherePoint: theta outside [0, pi]");
    SpherePoint p;
    p.theta = theta;
    p.phi = wrap_positive(phi, TWO_PI);
    const double st = std::sin(theta);
    p.n = {st * std::cos(p.phi), st * std::sin(p.phi), std::cos(theta)};
    return p;
  }

  static SpherePoint from_vector(const Vec3& v, double tol = 1e-9) {
    const double r = v.norm();
    if (std::abs(r - 1.0) > tol) throw std::invalid_argument("SpherePoint: vector is not unit length");
    const Vec3 u = v / r;
    SpherePoint p;
    p.n = u;
    p.theta = std::acos(std::clamp(u.z, -1.0, 1.0));
    p.phi = (u.x == 0.0 && u.y == 0.0) ? 0.0 : wrap_positive(std::atan2(u.y, u.x), TWO_PI);
    return p;
  }
};

/// Point on the unit three-sphere, written as a pair of complex components.
/// The Hopf projection identifies (q1, q2) with the sphere point whose
/// stereographic coordinate is q1/q2.
struct HopfPoint {
  complexd q1{0.0, 0.0};
  complexd q2{1.0, 0.0};

  HopfPoint() = default;
  HopfPoint(complexd a, complexd b, double tol = 1e-12) : q1(a), q2(b) {
    const double n = std::sqrt(std::norm(q1) + std::norm(q2));
    if (std::abs(n - 1.0) > tol) throw std::invalid_argument("HopfPoint: components are not unit norm");
    q1 /= n;
    q2 /= n;
  }

  Vec3 project_vector() const {
    const complexd w = q1 * std::conj(q2);
    return Vec3{2.0 * w.real(), 2.0 * w.imag(), std::norm(q2) - std::norm(q1)}.normalized();
  }

  SpherePoint project() const { return SpherePoint::from_vector(project_vector(), 1e-9); }
};

/// Hermitian inner product on C^2, antilinear in the first slot.
inline complexd hopf_inner(const HopfPoint& p, const HopfPoint& q) {
  return std::conj(p.q1) * q.q1 + std::conj(p.q2) * q.q2;
}

/// Some point on the fibre over the given unit vector.  Uses the chart
/// section that stays well conditioned near the point, so it is total.
inline HopfPoint fiber_point_of(const Vec3& n) {
  const Vec3 u = n.normalized();
  if (u.z >= -0.5) {
    const double r = std::sqrt(2.0 * (1.0 + u.z));
    return HopfPoint(complexd(u.x, u.y) / r, complexd(0.5 * r, 0.0), 1e-9);
  }
  const double r = std::sqrt(2.0 * (1.0 - u.z));
  return HopfPoint(complexd(0.5 * r, 0.0), complexd(u.x, -u.y) / r, 1e-9);
}

/// Rotation of R^3, stored as a 3x3 matrix in row-major order.
struct Rotation3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  Vec3 apply(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }

  Rotation3 transpose() const {
    Rotation3 r;
    r.m = {m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]};
    return r;
  }

  static Rotation3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    Rotation3 r;
    r.m = {c0.x, c1.x, c2.x, c0.y, c1.y, c2.y, c0.z, c1.z, c2.z};
    return r;
  }

  /// Rodrigues formula for the rotation about unit axis n by angle chi.
  static Rotation3 axis_angle(const Vec3& axis, double chi) {
    const Vec3 n = axis.normalized();
    const double c = std::cos(chi), s = std::sin(chi), t = 1.0 - c;
    Rotation3 r;
    r.m = {t * n.x * n.x + c,       t * n.x * n.y - s * n.z, t * n.x * n.z + s * n.y,
           t * n.x * n.y + s * n.z, t * n.y * n.y + c,       t * n.y * n.z - s * n.x,
           t * n.x * n.z - s * n.y, t * n.y * n.z + s * n.x, t * n.z * n.z + c};
    return r;
  }

  static Rotation3 rot_y(double beta) { return axis_angle({0.0, 1.0, 0.0}, beta); }
  static Rotation3 rot_z(double phi) { return axis_angle({0.0, 0.0, 1.0}, phi); }
};

}  // namespace cohloop
