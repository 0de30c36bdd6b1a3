#include "cohloop/hopf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cohloop {

HopfPoint section_u(double theta, double phi) {
  if (!(theta >= 0.0 && theta <= PI))
    throw std::invalid_argument("section_u: theta outside [0, pi]");
  if (theta >= PI - 1e-15)
    throw std::domain_error("section_u: the standard trivialization is undefined at the south pole");
  return HopfPoint(std::sin(0.5 * theta) * cis(phi), complexd(std::cos(0.5 * theta), 0.0), 1e-12);
}

double connection_coefficient(double theta) {
  if (!(theta >= 0.0 && theta <= PI))
    throw std::invalid_argument("connection_coefficient: theta outside [0, pi]");
  const double s = std::sin(0.5 * theta);
  return s * s;
}

namespace {

/// North-chart section, smooth away from the south pole.
HopfPoint north_section(const Vec3& n) {
  const Vec3 x = n.normalized();
  const double r = std::sqrt(2.0 * (1.0 + x.z));
  return HopfPoint(complexd(x.x, x.y) / r, complexd(0.5 * r, 0.0), 1e-9);
}

/// South-chart section w with u = e^{i phi} w, smooth away from the north
/// pole.
HopfPoint south_section(const Vec3& n) {
  const Vec3 x = n.normalized();
  const double r = std::sqrt(2.0 * (1.0 - x.z));
  return HopfPoint(complexd(0.5 * r, 0.0), complexd(x.x, -x.y) / r, 1e-9);
}

/// Connection pullback a(tau) in the given chart; the horizontal phase obeys
/// Phi' = -a.
double chart_connection(int chart, const Vec3& x, const Vec3& v) {
  double num = x.x * v.y - x.y * v.x;
  double denom = 1.0 + x.z;
  if (chart == 1) {
    num = -num;
    denom = 1.0 - x.z;
  }
  if (denom < 1e-9)
    throw std::runtime_error("parallel lift: curve passes through the chart's singular pole");
  return num / (2.0 * denom);
}

}  // namespace

double Loop::height() const {
  if (kind_ == Kind::GeneralSmooth)
    throw std::logic_error("Loop::height: general smooth loops have no height");
  return z_;
}

Loop Loop::constant_height(double z) {
  if (!(std::abs(z) <= 1.0)) throw std::invalid_argument("Loop: height outside [-1, 1]");
  Loop l;
  l.z_ = z;
  if (1.0 - std::abs(z) < 1e-14) {
    l.kind_ = Kind::Point;
    l.period_ = 0.0;
    l.point_ = Vec3{0.0, 0.0, z > 0.0 ? 1.0 : -1.0};
    return l;
  }
  l.kind_ = Kind::ConstantHeight;
  const double sin_theta = std::sqrt((1.0 - z) * (1.0 + z));
  l.period_ = TWO_PI * sin_theta / std::sqrt(2.0);
  return l;
}

Loop Loop::rotated(const SU2Element& g, const Loop& base) {
  Loop l = base;
  switch (base.kind_) {
    case Kind::ConstantHeight:
      l.kind_ = Kind::RotatedConstantHeight;
      l.frame_ = g;
      break;
    case Kind::RotatedConstantHeight:
      l.frame_ = g * base.frame_;
      break;
    case Kind::Point:
      // keep the base point; at() applies the accumulated frame
      l.frame_ = g * base.frame_;
      l.z_ = rotation_of(l.frame_).apply(base.point_).z;
      break;
    case Kind::GeneralSmooth: {
      const Rotation3 r = rotation_of(g);
      const auto pos = base.pos_;
      l.pos_ = [r, pos](double t) { return r.apply(pos(t)); };
      if (base.vel_) {
        const auto vel = base.vel_;
        l.vel_ = [r, vel](double t) { return r.apply(vel(t)); };
      }
      l.frame_ = g * base.frame_;
      break;
    }
  }
  l.rot_ = rotation_of(l.frame_);
  return l;
}

Loop Loop::smooth(std::function<Vec3(double)> position, std::function<Vec3(double)> velocity,
                  double period) {
  if (!(period > 0.0)) throw std::invalid_argument("Loop: period must be positive");
  if (!position) throw std::invalid_argument("Loop: position function required");
  Loop l;
  l.kind_ = Kind::GeneralSmooth;
  l.period_ = period;
  l.pos_ = std::move(position);
  l.vel_ = std::move(velocity);
  for (int i = 0; i < 32; ++i) {
    const Vec3 x = l.pos_(i * period / 32.0);
    if (std::abs(x.norm() - 1.0) > 1e-9)
      throw std::invalid_argument("Loop: position function must take unit-vector values");
  }
  if ((l.pos_(0.0) - l.pos_(period)).norm() > 1e-10)
    throw std::invalid_argument("Loop: position function is not closed over the period");
  return l;
}

Loop Loop::point(const Vec3& where) {
  Loop l;
  l.kind_ = Kind::Point;
  l.period_ = 0.0;
  l.point_ = where.normalized();
  l.z_ = l.point_.z;
  return l;
}

Vec3 Loop::at(double t) const {
  switch (kind_) {
    case Kind::Point:
      return rot_.apply(point_);
    case Kind::GeneralSmooth:
      return pos_(t);
    default: {
      const double sin_theta = std::sqrt((1.0 - z_) * (1.0 + z_));
      const double omega = std::sqrt(2.0) / sin_theta;
      const Vec3 base{sin_theta * std::cos(omega * t), sin_theta * std::sin(omega * t), z_};
      return kind_ == Kind::ConstantHeight ? base : rot_.apply(base);
    }
  }
}

Vec3 Loop::velocity(double t) const {
  switch (kind_) {
    case Kind::Point:
      return Vec3{0.0, 0.0, 0.0};
    case Kind::GeneralSmooth: {
      if (vel_) return vel_(t);
      // fourth-order central difference
      const double h = 3e-4 * period_;
      const Vec3 d = (pos_(t + h) - pos_(t - h)) * 8.0 - (pos_(t + 2.0 * h) - pos_(t - 2.0 * h));
      return d / (12.0 * h);
    }
    default: {
      const double sin_theta = std::sqrt((1.0 - z_) * (1.0 + z_));
      const double omega = std::sqrt(2.0) / sin_theta;
      const Vec3 base{-sin_theta * omega * std::sin(omega * t),
                      sin_theta * omega * std::cos(omega * t), 0.0};
      return kind_ == Kind::ConstantHeight ? base : rot_.apply(base);
    }
  }
}

Loop constant_height_loop(int k, HalfInt m) {
  weight_index(RepLevel(k), m);  // validates range and parity
  return Loop::constant_height(static_cast<double>(m.twice) / k);
}

Loop star_shaped_loop(double theta0, const std::vector<std::array<double, 3>>& harmonics) {
  for (const auto& h : harmonics) {
    if (std::abs(h[0] - std::round(h[0])) > 1e-12 || h[0] < 1.0)
      throw std::invalid_argument("star loop: harmonic frequencies must be positive integers");
  }
  auto theta_b = [theta0, harmonics](double phi) {
    double th = theta0;
    for (const auto& h : harmonics) th += h[1] * std::cos(h[0] * phi + h[2]);
    return th;
  };
  auto dtheta_b = [harmonics](double phi) {
    double d = 0.0;
    for (const auto& h : harmonics) d -= h[1] * h[0] * std::sin(h[0] * phi + h[2]);
    return d;
  };
  for (int i = 0; i < 720; ++i) {
    const double th = theta_b(i * TWO_PI / 720.0);
    if (th < 1e-3 || th > PI - 1e-3)
      throw std::invalid_argument("star loop: radial graph leaves (0, pi)");
  }
  auto pos = [theta_b](double phi) {
    const double th = theta_b(phi);
    return Vec3{std::sin(th) * std::cos(phi), std::sin(th) * std::sin(phi), std::cos(th)};
  };
  auto vel = [theta_b, dtheta_b](double phi) {
    const double th = theta_b(phi);
    const double dth = dtheta_b(phi);
    return Vec3{dth * std::cos(th) * std::cos(phi) - std::sin(th) * std::sin(phi),
                dth * std::cos(th) * std::sin(phi) + std::sin(th) * std::cos(phi),
                -dth * std::sin(th)};
  };
  return Loop::smooth(pos, vel, TWO_PI);
}

double star_region_area(double theta0, const std::vector<std::array<double, 3>>& harmonics) {
  auto theta_b = [theta0, &harmonics](double phi) {
    double th = theta0;
    for (const auto& h : harmonics) th += h[1] * std::cos(h[0] * phi + h[2]);
    return th;
  };
  return adaptive_simpson([&theta_b](double phi) { return 1.0 - std::cos(theta_b(phi)); }, 0.0,
                          TWO_PI, 1e-12);
}

LiftedLoop::LiftedLoop(const Loop& loop) : loop_(loop) {
  switch (loop_.kind()) {
    case Loop::Kind::GeneralSmooth:
      build_numeric_transport();
      break;
    case Loop::Kind::Point: {
      closed_form_ = true;
      // constant lift: standard fiber point of the base location, so the
      // poles get (0,1) and (1,0); at() multiplies the frame back on
      const Vec3 base = rotation_of(loop_.frame().inverse()).apply(loop_.at(0.0));
      const HopfPoint f = fiber_point_of(base);
      amp1_ = f.q1;
      amp2_ = f.q2;
      mu1_ = mu2_ = 0.0;
      break;
    }
    default: {
      closed_form_ = true;
      const double z = loop_.height();
      amp1_ = std::sqrt(0.5 * (1.0 - z));  // sin(theta/2)
      amp2_ = std::sqrt(0.5 * (1.0 + z));  // cos(theta/2)
      const double sin_theta = std::sqrt((1.0 - z) * (1.0 + z));
      const double omega = std::sqrt(2.0) / sin_theta;
      mu1_ = 0.5 * (1.0 + z) * omega;   // cos^2(theta/2) Omega
      mu2_ = -0.5 * (1.0 - z) * omega;  // -sin^2(theta/2) Omega
      break;
    }
  }
}

LiftedLoop::LiftedLoop(const Loop& loop, const HopfPoint& start) : LiftedLoop(loop) {
  if ((start.project_vector() - loop_.at(0.0)).norm() > 1e-8)
    throw std::invalid_argument("LiftedLoop: start does not project onto loop(0)");
  start_phase_ = unit_ratio(hopf_inner(at(0.0), start), complexd(1.0, 0.0));
}

void LiftedLoop::build_numeric_transport() {
  closed_form_ = false;
  const double T = loop_.period();
  nseg_ = 256;
  chart_.resize(nseg_);
  phase_.assign(nseg_ + 1, 0.0);
  for (int i = 0; i < nseg_; ++i)
    chart_[i] = loop_.at((i + 0.5) * T / nseg_).z < -0.5 ? 1 : 0;
  for (int i = 0; i < nseg_; ++i) {
    const double t0 = i * T / nseg_;
    const double t1 = (i + 1) * T / nseg_;
    const int c = chart_[i];
    const double dphi = adaptive_simpson(
        [this, c](double tau) { return -chart_connection(c, loop_.at(tau), loop_.velocity(tau)); },
        t0, t1, 1e-13);
    double p = phase_[i] + dphi;
    if (i + 1 < nseg_ && chart_[i + 1] != c) {
      const Vec3 x = loop_.at(t1);
      const double phi = std::atan2(x.y, x.x);
      // u = e^{i phi} w: switching north -> south adds phi, the reverse removes it
      p += (chart_[i + 1] == 1) ? phi : -phi;
    }
    phase_[i + 1] = p;
  }
}

std::pair<double, int> LiftedLoop::phase_and_chart(double t) const {
  const double T = loop_.period();
  const double tw = (t >= 0.0 && t <= T) ? t : wrap_positive(t, T);
  const double h = T / nseg_;
  const int seg = std::min(static_cast<int>(tw / h), nseg_ - 1);
  const int c = chart_[seg];
  const double t0 = seg * h;
  double phase = phase_[seg];
  if (tw > t0)
    phase += adaptive_simpson(
        [this, c](double tau) { return -chart_connection(c, loop_.at(tau), loop_.velocity(tau)); },
        t0, tw, 1e-13);
  return {phase, c};
}

HopfPoint LiftedLoop::at(double t) const {
  if (closed_form_) {
    const complexd c1 = amp1_ * cis(mu1_ * t);
    const complexd c2 = amp2_ * cis(mu2_ * t);
    const SU2Element& g = loop_.frame();
    return HopfPoint(start_phase_ * (g.m00() * c1 + g.m01() * c2),
                     start_phase_ * (g.m10() * c1 + g.m11() * c2), 1e-9);
  }
  const auto [phase, chart] = phase_and_chart(t);
  const HopfPoint sec = chart == 0 ? north_section(loop_.at(t)) : south_section(loop_.at(t));
  const complexd u = start_phase_ * cis(phase);
  return HopfPoint(u * sec.q1, u * sec.q2, 1e-9);
}

std::pair<complexd, complexd> LiftedLoop::derivative(double t) const {
  if (closed_form_) {
    const complexd d1 = complexd(0.0, mu1_) * amp1_ * cis(mu1_ * t);
    const complexd d2 = complexd(0.0, mu2_) * amp2_ * cis(mu2_ * t);
    const SU2Element& g = loop_.frame();
    return {start_phase_ * (g.m00() * d1 + g.m01() * d2),
            start_phase_ * (g.m10() * d1 + g.m11() * d2)};
  }
  const auto [phase, chart] = phase_and_chart(t);
  const Vec3 x = loop_.at(t);
  const Vec3 v = loop_.velocity(t);
  const double dphase = -chart_connection(chart, x, v);
  complexd s1, s2, ds1, ds2;
  if (chart == 0) {
    const double r = std::sqrt(2.0 * (1.0 + x.z));
    s1 = complexd(x.x, x.y) / r;
    s2 = complexd(0.5 * r, 0.0);
    ds1 = complexd(v.x, v.y) / r - complexd(x.x, x.y) * (v.z / (r * r * r));
    ds2 = complexd(v.z / (2.0 * r), 0.0);
  } else {
    const double r = std::sqrt(2.0 * (1.0 - x.z));
    s1 = complexd(0.5 * r, 0.0);
    s2 = complexd(x.x, -x.y) / r;
    ds1 = complexd(-v.z / (2.0 * r), 0.0);
    ds2 = complexd(v.x, -v.y) / r + complexd(x.x, -x.y) * (v.z / (r * r * r));
  }
  const complexd u = start_phase_ * cis(phase);
  const complexd idp(0.0, dphase);
  return {u * (idp * s1 + ds1), u * (idp * s2 + ds2)};
}

complexd LiftedLoop::holonomy() const {
  if (loop_.is_point()) return complexd(1.0, 0.0);
  return unit_ratio(hopf_inner(at(0.0), at(loop_.period())), complexd(1.0, 0.0));
}

LiftedLoop parallel_lift(const Loop& loop, const HopfPoint& start) {
  return LiftedLoop(loop, start);
}

complexd holonomy(const Loop& loop) { return LiftedLoop(loop).holonomy(); }

bool is_bohr_sommerfeld(const Loop& loop, int k, double tol) {
  return bs_defect(loop, k) < tol;
}

double bs_defect(const Loop& loop, int k) {
  if (k < 1) throw std::invalid_argument("bs_defect: level must be at least 1");
  const complexd hol = holonomy(loop);
  return std::abs(cis(k * std::arg(hol)) - complexd(1.0, 0.0));
}

namespace {

/// Whether `m` lies strictly to the right of the oriented loop, judged at
/// the nearest boundary point (refined by two grid-zoom rounds, which keeps
/// the tangential error negligible against the normal offset).
bool point_right_of(const Loop& loop, const Vec3& m) {
  const double T = loop.period();
  const int n = 1024;
  double best_s = 0.0, best = 1e100;
  for (int i = 0; i < n; ++i) {
    const double s = i * T / n;
    const double d = (m - loop.at(s)).dot(m - loop.at(s));
    if (d < best) {
      best = d;
      best_s = s;
    }
  }
  double window = T / n;
  for (int round = 0; round < 2; ++round) {
    double local_best = 1e100, local_s = best_s;
    for (int i = -20; i <= 20; ++i) {
      const double s = best_s + i * window / 20.0;
      const double d = (m - loop.at(s)).dot(m - loop.at(s));
      if (d < local_best) {
        local_best = d;
        local_s = s;
      }
    }
    best_s = local_s;
    window /= 20.0;
  }
  const Vec3 x = loop.at(best_s);
  const Vec3 left = x.cross(loop.velocity(best_s).normalized());
  return (m - x).dot(left) < 0.0;
}

}  // namespace

std::vector<IntersectionDatum> find_intersections(const Loop& gamma, const Loop& sigma) {
  if (gamma.is_point() || sigma.is_point())
    throw std::invalid_argument("find_intersections: degenerate point loops are excluded");
  const int n = 256;
  const double tg = gamma.period(), ts = sigma.period();
  std::vector<Vec3> gp(n), sp(n);
  for (int i = 0; i < n; ++i) gp[i] = gamma.at(i * tg / n);
  for (int j = 0; j < n; ++j) sp[j] = sigma.at(j * ts / n);

  std::vector<std::vector<double>> d2(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d2[i][j] = (gp[i] - sp[j]).dot(gp[i] - sp[j]);

  std::vector<IntersectionDatum> found;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = d2[i][j];
      if (v > 0.04) continue;
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          if (d2[(i + di + n) % n][(j + dj + n) % n] < v) {
            is_min = false;
            break;
          }
        }
      if (!is_min) continue;

      // Newton refinement of the tangential conditions; the Jacobian drops
      // the curvature terms, which vanish at the crossing itself.
      double s = i * tg / n, t = j * ts / n;
      bool converged = false;
      for (int iter = 0; iter < 60; ++iter) {
        const Vec3 r = gamma.at(s) - sigma.at(t);
        if (r.norm() < 1e-13) {
          converged = true;
          break;
        }
        const Vec3 gv = gamma.velocity(s);
        const Vec3 sv = sigma.velocity(t);
        const double g1 = r.dot(gv), g2 = r.dot(sv);
        const double a = gv.dot(gv), b = -gv.dot(sv), c = gv.dot(sv), d = -sv.dot(sv);
        const double det = a * d - b * c;
        if (std::abs(det) < 1e-14) break;
        const double dstep = std::clamp((-g1 * d + g2 * b) / det, -0.1 * tg, 0.1 * tg);
        const double tstep = std::clamp((-a * g2 + c * g1) / det, -0.1 * ts, 0.1 * ts);
        s += dstep;
        t += tstep;
        if (std::abs(dstep) < 1e-15 * tg && std::abs(tstep) < 1e-15 * ts) break;
      }
      if (!converged && (gamma.at(s) - sigma.at(t)).norm() > 1e-12) continue;

      s = wrap_positive(s, tg);
      t = wrap_positive(t, ts);
      const Vec3 xm = ((gamma.at(s) + sigma.at(t)) * 0.5).normalized();
      bool duplicate = false;
      for (const auto& known : found)
        if ((known.x.n - xm).norm() < 1e-7) {
          duplicate = true;
          break;
        }
      if (duplicate) continue;

      const Vec3 u = gamma.velocity(s).normalized();
      const Vec3 w = sigma.velocity(t).normalized();
      const Vec3 cr = u.cross(w);
      if (cr.norm() < 1e-6)
        throw std::runtime_error("find_intersections: non-transverse intersection");
      IntersectionDatum datum;
      datum.s = s;
      datum.t = t;
      datum.x = SpherePoint::from_vector(xm, 1e-9);
      datum.angle = std::atan2(cr.norm(), u.dot(w));
      datum.orientation = cr.dot(xm) > 0.0 ? 1 : -1;
      found.push_back(datum);
    }
  }
  std::sort(found.begin(), found.end(),
            [](const IntersectionDatum& a, const IntersectionDatum& b) { return a.s < b.s; });
  return found;
}

std::vector<IntersectionDatum> find_intersections(const LiftedLoop& gamma,
                                                  const LiftedLoop& sigma) {
  std::vector<IntersectionDatum> data = find_intersections(gamma.base(), sigma.base());
  for (auto& datum : data)
    datum.omega = unit_ratio(hopf_inner(sigma.at(datum.t), gamma.at(datum.s)), complexd(1.0, 0.0));
  return data;
}

double lune_area(const Loop& gamma, const Loop& sigma,
                 const std::vector<IntersectionDatum>& crossings) {
  if (crossings.size() != 2)
    throw std::invalid_argument("lune_area: exactly two crossings required");
  const double tg = gamma.period(), ts = sigma.period();

  // The primitive (1 - cos theta) dphi of the area form is singular at the
  // chart's south pole, so integrating it in the standard frame loses all
  // accuracy when a boundary arc grazes (0,0,-1).  Since the circuit integral
  // only determines the area mod 4pi (and we wrap at the end anyway), rotate
  // the chart so its singular point lands as far from both loops as possible.
  Vec3 far_dir{0.0, 0.0, -1.0};
  {
    std::vector<Vec3> samples;
    const int n_samp = 192;
    for (int i = 0; i < n_samp; ++i) {
      samples.push_back(gamma.at(tg * i / n_samp));
      samples.push_back(sigma.at(ts * i / n_samp));
    }
    double best = 2.0;  // max dot product against the samples; lower is safer
    const int n_cand = 128;
    for (int i = 0; i < n_cand; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / n_cand;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = 2.399963229728653 * i;  // golden-angle spiral
      const Vec3 c{r * std::cos(phi), r * std::sin(phi), z};
      double worst = -2.0;
      for (const Vec3& p : samples) worst = std::max(worst, c.dot(p));
      if (worst < best) {
        best = worst;
        far_dir = c;
      }
    }
  }
  // Rodrigues rotation taking far_dir to the south pole (0,0,-1).
  Vec3 axis{1.0, 0.0, 0.0};
  double sin_a = 0.0, cos_a = -far_dir.z;
  {
    const Vec3 raw = far_dir.cross(Vec3{0.0, 0.0, -1.0});
    const double n = raw.norm();
    if (n > 1e-12) {
      axis = raw / n;
      sin_a = n;
    } else if (far_dir.z < 0.0) {
      cos_a = 1.0;  // already at the south pole: identity
    }
  }
  auto rot = [axis, sin_a, cos_a](const Vec3& v) {
    return v * cos_a + axis.cross(v) * sin_a + axis * (axis.dot(v) * (1.0 - cos_a));
  };

  // oriented line integral of (1 - cos theta) dphi along a loop segment,
  // evaluated in the rotated chart
  auto segment_area = [&](const Loop& loop, double a, double b) {
    return adaptive_simpson(
        [&](double t) {
          const Vec3 x = rot(loop.at(t));
          const Vec3 v = rot(loop.velocity(t));
          const double denom = 1.0 + x.z;
          if (denom < 1e-9) throw std::runtime_error("lune_area: boundary touches the chart pole");
          return (x.x * v.y - x.y * v.x) / denom;
        },
        a, b, 1e-12);
  };

  // Circuit candidate: sigma forward from crossing i to crossing j, then
  // gamma backward from j to i.  The lune lies on the circuit's left, so a
  // point just left of the sigma arc must lie to the right of gamma.
  auto try_candidate = [&](int i, int j, double* area) {
    const double dt = wrap_positive(crossings[j].t - crossings[i].t, ts);
    const double ds = wrap_positive(crossings[j].s - crossings[i].s, tg);
    const double tmid = crossings[i].t + 0.5 * dt;
    const Vec3 xm = sigma.at(tmid);
    const Vec3 left = xm.cross(sigma.velocity(tmid).normalized());
    const Vec3 probe = (xm + 1e-5 * left).normalized();
    if (!point_right_of(gamma, probe)) return false;
    *area = segment_area(sigma, crossings[i].t, crossings[i].t + dt) -
            segment_area(gamma, crossings[j].s - ds, crossings[j].s);
    return true;
  };

  double a01 = 0.0, a10 = 0.0;
  const bool c01 = try_candidate(0, 1, &a01);
  const bool c10 = try_candidate(1, 0, &a10);
  if (c01 == c10)
    throw std::runtime_error("lune_area: side tests did not select a unique boundary circuit");
  return wrap_positive(c01 ? a01 : a10, 2.0 * TWO_PI);
}

double parallelepiped_volume(double beta, const SpherePoint& p) {
  const Vec3 zhat{0.0, 0.0, 1.0};
  const Vec3 zb{std::sin(beta), 0.0, std::cos(beta)};
  return zhat.dot(zb.cross(p.n));
}

}  // namespace cohloop
