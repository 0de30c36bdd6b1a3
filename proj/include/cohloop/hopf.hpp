#pragma once

#include <array>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "cohloop/numeric.hpp"
#include "cohloop/sphere.hpp"
#include "cohloop/su2.hpp"

namespace cohloop {

/// Standard trivializing section of the Hopf bundle away from the south
/// pole: u(theta, phi) = (sin(theta/2) e^{i phi}, cos(theta/2)).
HopfPoint section_u(double theta, double phi);

/// dphi-coefficient sin^2(theta/2) of the connection form in the standard
/// trivialization.
double connection_coefficient(double theta);

/// Closed parametrized curve on the unit sphere.  Constant-height circles
/// (possibly rotated) use the arclength normalization in which a circle at
/// colatitude theta has period 2 pi sin(theta) / sqrt(2); general smooth
/// loops keep the caller's parametrization.  Degenerate point loops have
/// period zero.
class Loop {
 public:
  enum class Kind { ConstantHeight, RotatedConstantHeight, GeneralSmooth, Point };

  /// Circle at height z traversed with increasing longitude; |z| = 1 within
  /// 1e-14 degenerates to a point loop at the pole.
  static Loop constant_height(double z);

  /// Image of `base` under the rotation covered by g.
  static Loop rotated(const SU2Element& g, const Loop& base);

  /// General smooth loop from a T-periodic position function (values must be
  /// unit vectors).  A velocity callback may be supplied; otherwise central
  /// finite differences with one extrapolation level are used.
  static Loop smooth(std::function<Vec3(double)> position,
                     std::function<Vec3(double)> velocity, double period);

  /// Degenerate single-point loop.
  static Loop point(const Vec3& where);

  Kind kind() const { return kind_; }
  double period() const { return period_; }
  bool is_point() const { return kind_ == Kind::Point; }

  /// Height of the underlying circle before rotation; only meaningful for
  /// (rotated) constant-height and point loops.
  double height() const;

  /// Rotation applied on top of the underlying circle (identity if none).
  const SU2Element& frame() const { return frame_; }

  Vec3 at(double t) const;
  Vec3 velocity(double t) const;

 private:
  Loop() = default;

  Kind kind_ = Kind::Point;
  double period_ = 0.0;
  double z_ = 1.0;                    // circle height (constant-height kinds)
  SU2Element frame_;                  // identity unless rotated
  Rotation3 rot_ = Rotation3::rot_z(0.0);
  std::function<Vec3(double)> pos_;   // general-smooth only
  std::function<Vec3(double)> vel_;   // optional analytic velocity
  Vec3 point_{0.0, 0.0, 1.0};         // point kind
};

/// Circle at the quantized height cos(theta) = 2m/k; the extreme weights
/// m = +-k/2 give degenerate point loops at the poles.
Loop constant_height_loop(int k, HalfInt m);

/// Smooth star-shaped loop about the +z axis with radial colatitude graph
/// theta_b(phi) = theta0 + sum_i amp_i cos(n_i phi + phase_i), parametrized
/// by longitude (period 2 pi).  Each harmonic is (n, amp, phase).
Loop star_shaped_loop(double theta0, const std::vector<std::array<double, 3>>& harmonics);

/// Spherical area enclosed by a star-shaped boundary, integrated directly
/// from the radial graph: A = int (1 - cos theta_b(phi)) dphi.
double star_region_area(double theta0, const std::vector<std::array<double, 3>>& harmonics);

/// Horizontal (parallel) lift of a loop into the unit sphere of C^2.
/// Constant-height loops use the closed-form transported section
/// e^{-i sin^2(theta/2) phi} u(theta, phi); general smooth loops accumulate
/// the connection integral by adaptive quadrature in the north/south chart
/// sections, switching charts near the south pole.
class LiftedLoop {
 public:
  /// Lift starting at the chart section over loop.at(0).
  explicit LiftedLoop(const Loop& loop);

  /// Lift starting at `start`, which must project onto loop.at(0).
  LiftedLoop(const Loop& loop, const HopfPoint& start);

  const Loop& base() const { return loop_; }
  double period() const { return loop_.period(); }

  HopfPoint at(double t) const;

  /// Componentwise derivative d/dt of the lift.
  std::pair<complexd, complexd> derivative(double t) const;

  /// <lift(0), lift(period)>, projected onto the unit circle.
  complexd holonomy() const;

 private:
  void build_numeric_transport();
  std::pair<double, int> phase_and_chart(double t) const;  // accumulated chart phase

  Loop loop_;
  complexd start_phase_{1.0, 0.0};  // unit factor relating canonical lift to start

  // closed-form branch (constant-height kinds and point loops)
  bool closed_form_ = true;
  complexd amp1_{0.0, 0.0}, amp2_{1.0, 0.0};  // sin(theta/2), cos(theta/2)
  double mu1_ = 0.0, mu2_ = 0.0;              // component frequencies

  // numeric branch checkpoints
  int nseg_ = 0;
  std::vector<int> chart_;          // 0 = north section, 1 = south section
  std::vector<double> phase_;       // chart phase at each segment start
};

/// Free-standing parallel lift, mirroring the two LiftedLoop constructors.
LiftedLoop parallel_lift(const Loop& loop, const HopfPoint& start);

/// Holonomy of the canonical lift of the loop.
complexd holonomy(const Loop& loop);

/// Whether the level-k holonomy is trivial: |holonomy^k - 1| < tol.
bool is_bohr_sommerfeld(const Loop& loop, int k, double tol = 1e-8);

/// The defect |holonomy^k - 1| itself.
double bs_defect(const Loop& loop, int k);

/// Transverse crossing of two loops.
struct IntersectionDatum {
  double s = 0.0;            // parameter on the first loop
  double t = 0.0;            // parameter on the second loop
  SpherePoint x;             // crossing point
  double angle = 0.0;        // angle between tangents, in (0, pi)
  int orientation = 0;       // sign of (gamma' x sigma') . x
  complexd omega{1.0, 0.0};  // lift ratio gamma~ / sigma~ (1 when unlifted)
};

/// All transverse intersections of two loops, found by a 256x256 parameter
/// grid scan refined with 2-D Newton to chordal distance below 1e-12.
/// Throws on point loops and on (near-)tangential contact.
std::vector<IntersectionDatum> find_intersections(const Loop& gamma, const Loop& sigma);

/// Same, with the relative lift phase omega filled in from the two lifts.
std::vector<IntersectionDatum> find_intersections(const LiftedLoop& gamma,
                                                  const LiftedLoop& sigma);

/// Area of the lune bounded by two loops crossing exactly twice: the region
/// to the right of `gamma` and to the left of `sigma`, computed as the
/// oriented boundary integral of (1 - cos theta) dphi.  Result in (0, 4 pi).
double lune_area(const Loop& gamma, const Loop& sigma,
                 const std::vector<IntersectionDatum>& crossings);

/// Triple product det[z, R_y(beta) z, p] of the two circle axes and a point.
double parallelepiped_volume(double beta, const SpherePoint& p);

}  // namespace cohloop
