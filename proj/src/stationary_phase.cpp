#include "cohloop/stationary_phase.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cohloop {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

using Callable = std::function<complexd(double, double)>;

// Richardson-extrapolated central difference in one variable.
complexd central_diff(const Callable& f, double s, double t, bool in_s, double h) {
  auto at = [&](double d) { return in_s ? f(s + d, t) : f(s, t + d); };
  const complexd coarse = (at(h) - at(-h)) / (2.0 * h);
  const complexd fine = (at(0.5 * h) - at(-0.5 * h)) / h;
  return (4.0 * fine - coarse) / 3.0;
}

std::array<complexd, 2> fd_gradient(const Callable& f, double s, double t, double hs, double ht) {
  return {central_diff(f, s, t, true, hs), central_diff(f, s, t, false, ht)};
}

// Richardson-extrapolated pure and mixed second differences.
std::array<complexd, 4> fd_hessian(const Callable& f, double s, double t, double hs, double ht) {
  auto pure = [&](bool in_s, double h) {
    auto at = [&](double d) { return in_s ? f(s + d, t) : f(s, t + d); };
    const complexd center = f(s, t);
    auto second = [&](double step) { return (at(step) - 2.0 * center + at(-step)) / (step * step); };
    return (4.0 * second(0.5 * h) - second(h)) / 3.0;
  };
  auto mixed = [&](double h) {
    auto cross = [&](double step) {
      return (f(s + step, t + step) - f(s + step, t - step) - f(s - step, t + step) +
              f(s - step, t - step)) /
             (4.0 * step * step);
    };
    return (4.0 * cross(0.5 * h) - cross(h)) / 3.0;
  };
  const complexd ss = pure(true, hs);
  const complexd tt = pure(false, ht);
  const complexd st = mixed(0.5 * (hs + ht));
  return {ss, st, st, tt};
}

// Gradient and Hessian of the phase from the best available source: the
// analytic callbacks, differences of the oscillator w = e^{iS} (immune to
// branch cuts of log w), or differences of the phase itself.
class PhaseDerivatives {
 public:
  explicit PhaseDerivatives(const TorusIntegrand& ig)
      : ig_(ig),
        grad_hs_(std::cbrt(kEps) * ig.period_s),
        grad_ht_(std::cbrt(kEps) * ig.period_t),
        hess_hs_(std::pow(kEps, 1.0 / 6.0) * ig.period_s),
        hess_ht_(std::pow(kEps, 1.0 / 6.0) * ig.period_t) {}

  std::array<complexd, 2> gradient(double s, double t) const {
    if (ig_.gradient) return ig_.gradient(s, t);
    if (ig_.oscillator) {
      const complexd w = ig_.oscillator(s, t);
      const auto dw = fd_gradient(ig_.oscillator, s, t, grad_hs_, grad_ht_);
      const complexd mi(0.0, -1.0);
      return {mi * dw[0] / w, mi * dw[1] / w};
    }
    return fd_gradient(ig_.phase, s, t, grad_hs_, grad_ht_);
  }

  std::array<complexd, 4> hessian(double s, double t) const {
    if (ig_.hessian) return ig_.hessian(s, t);
    if (ig_.oscillator) {
      const complexd w = ig_.oscillator(s, t);
      const auto dw = fd_gradient(ig_.oscillator, s, t, hess_hs_, hess_ht_);
      const auto d2w = fd_hessian(ig_.oscillator, s, t, hess_hs_, hess_ht_);
      const complexd mi(0.0, -1.0);
      std::array<complexd, 4> out;
      out[0] = mi * (d2w[0] / w - dw[0] * dw[0] / (w * w));
      out[1] = mi * (d2w[1] / w - dw[0] * dw[1] / (w * w));
      out[2] = out[1];
      out[3] = mi * (d2w[3] / w - dw[1] * dw[1] / (w * w));
      return out;
    }
    return fd_hessian(ig_.phase, s, t, hess_hs_, hess_ht_);
  }

 private:
  const TorusIntegrand& ig_;
  double grad_hs_, grad_ht_, hess_hs_, hess_ht_;
};

double gradient_norm(const std::array<complexd, 2>& g) {
  return std::sqrt(std::norm(g[0]) + std::norm(g[1]));
}

// Newton iteration on the real torus coordinates: solve H delta = -dS in
// complex arithmetic and step by the real part.
bool newton_refine(const PhaseDerivatives& der, const TorusIntegrand& ig, double& s, double& t) {
  for (int iter = 0; iter < 60; ++iter) {
    const auto g = der.gradient(s, t);
    if (gradient_norm(g) < 1e-12) break;
    const auto h = der.hessian(s, t);
    const complexd det = h[0] * h[3] - h[1] * h[2];
    if (std::abs(det) < 1e-14) return false;
    const double ds = ((-h[3] * g[0] + h[1] * g[1]) / det).real();
    const double dt = ((h[2] * g[0] - h[0] * g[1]) / det).real();
    const double cap_s = 0.1 * ig.period_s, cap_t = 0.1 * ig.period_t;
    const double step_s = std::clamp(ds, -cap_s, cap_s);
    const double step_t = std::clamp(dt, -cap_t, cap_t);
    s += step_s;
    t += step_t;
    if (std::abs(step_s) + std::abs(step_t) < 1e-14 * (ig.period_s + ig.period_t)) break;
  }
  return gradient_norm(der.gradient(s, t)) < 1e-10;
}

std::array<complexd, 2> symmetric_eigenvalues(const std::array<complexd, 4>& h) {
  const complexd mid = 0.5 * (h[0] + h[3]);
  const complexd disc = std::sqrt(0.25 * (h[0] - h[3]) * (h[0] - h[3]) + h[1] * h[2]);
  return {mid + disc, mid - disc};
}

}  // namespace

std::vector<CriticalPoint> find_stationary_points(const TorusIntegrand& integrand, int grid) {
  if (grid < 8) throw std::invalid_argument("find_stationary_points: grid too coarse");
  if (!integrand.phase || !integrand.amplitude)
    throw std::invalid_argument("find_stationary_points: incomplete integrand");
  const PhaseDerivatives der(integrand);

  std::vector<double> g2(static_cast<std::size_t>(grid) * grid);
  double min_im = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double s = integrand.period_s * i / grid;
    for (int j = 0; j < grid; ++j) {
      const double t = integrand.period_t * j / grid;
      g2[static_cast<std::size_t>(i) * grid + j] = gradient_norm(der.gradient(s, t));
      min_im = std::min(min_im, integrand.phase(s, t).imag());
    }
  }

  std::vector<CriticalPoint> found;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double here = g2[static_cast<std::size_t>(i) * grid + j];
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di)
        for (int dj = -1; dj <= 1 && is_min; ++dj) {
          if (di == 0 && dj == 0) continue;
          const int ni = (i + di + grid) % grid, nj = (j + dj + grid) % grid;
          if (g2[static_cast<std::size_t>(ni) * grid + nj] < here) is_min = false;
        }
      if (!is_min) continue;

      double s = integrand.period_s * i / grid;
      double t = integrand.period_t * j / grid;
      if (!newton_refine(der, integrand, s, t)) continue;
      s = wrap_positive(s, integrand.period_s);
      t = wrap_positive(t, integrand.period_t);
      const complexd value = integrand.phase(s, t);
      if (std::abs(value.imag()) > 1e-8) continue;

      bool duplicate = false;
      for (const CriticalPoint& p : found) {
        const double ds = std::abs(wrap_positive(p.s - s + 0.5 * integrand.period_s,
                                                 integrand.period_s) -
                                   0.5 * integrand.period_s);
        const double dt = std::abs(wrap_positive(p.t - t + 0.5 * integrand.period_t,
                                                 integrand.period_t) -
                                   0.5 * integrand.period_t);
        if (ds < 1e-6 * integrand.period_s && dt < 1e-6 * integrand.period_t) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) continue;

      CriticalPoint point;
      point.s = s;
      point.t = t;
      point.phase_value = value;
      point.hessian = der.hessian(s, t);
      point.eigenvalues = symmetric_eigenvalues(point.hessian);
      if (std::abs(point.eigenvalues[0]) < 1e-10 || std::abs(point.eigenvalues[1]) < 1e-10) {
        std::ostringstream msg;
        msg << "find_stationary_points: degenerate Hessian at (" << s << ", " << t << ")";
        throw std::runtime_error(msg.str());
      }
      point.alphas = {std::arg(point.eigenvalues[0]), std::arg(point.eigenvalues[1])};
      found.push_back(point);
    }
  }

  if (found.empty() && min_im < 1e-8)
    throw std::runtime_error(
        "find_stationary_points: the integrand reaches unit magnitude on a ridge with no "
        "isolated stationary point");

  std::sort(found.begin(), found.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    return a.s != b.s ? a.s < b.s : a.t < b.t;
  });
  return found;
}

complexd csp_leading_term(int k, const TorusIntegrand& integrand,
                          const std::vector<CriticalPoint>& points) {
  if (k <= 0) throw std::invalid_argument("csp_leading_term: k must be positive");
  complexd acc(0.0, 0.0);
  for (const CriticalPoint& p : points) {
    const complexd f = integrand.amplitude(p.s, p.t);
    const complexd oscillation = std::exp(complexd(0.0, static_cast<double>(k)) * p.phase_value);
    const double abs_det = std::abs(p.eigenvalues[0] * p.eigenvalues[1]);
    const double arg_sum = 0.5 * PI - 0.5 * (p.alphas[0] + p.alphas[1]);
    acc += f * oscillation * cis(arg_sum) / std::sqrt(abs_det);
  }
  return TWO_PI / k * acc;  // prefactor (2 pi / k)^{n/2} with n = 2
}

complexd quadrature_oracle(const TorusIntegrand& integrand, int k, int initial_nodes) {
  if (!integrand.amplitude || (!integrand.phase && !integrand.oscillator))
    throw std::invalid_argument("quadrature_oracle: incomplete integrand");
  auto evaluate = [&](int nodes) {
    const double hs = integrand.period_s / nodes;
    const double ht = integrand.period_t / nodes;
    std::complex<long double> total(0.0L, 0.0L);
    for (int i = 0; i < nodes; ++i) {
      const double s = i * hs;
      std::complex<long double> row(0.0L, 0.0L);
      for (int j = 0; j < nodes; ++j) {
        const complexd v = integrand_value(integrand, k, s, j * ht);
        row += std::complex<long double>(v.real(), v.imag());
      }
      total += row;
    }
    return complexd(static_cast<double>(total.real()), static_cast<double>(total.imag())) *
           (hs * ht);
  };

  int n = initial_nodes > 0 ? initial_nodes : std::max(64, 8 * k);
  constexpr int kMaxNodes = 1 << 14;
  complexd current = evaluate(n);
  while (true) {
    n *= 2;
    const complexd refined = evaluate(n);
    const double moved = std::abs(refined - current);
    current = refined;
    if (moved < 1e-9) return current;
    if (2 * n > kMaxNodes) {
      std::ostringstream msg;
      msg << "quadrature_oracle: not converged at " << n << " nodes per period (defect " << moved
          << ")";
      throw std::runtime_error(msg.str());
    }
  }
}

complexd integrand_value(const TorusIntegrand& integrand, int k, double s, double t) {
  if (integrand.oscillator)
    return integrand.amplitude(s, t) * pow_int(integrand.oscillator(s, t), k);
  return integrand.amplitude(s, t) *
         std::exp(complexd(0.0, static_cast<double>(k)) * integrand.phase(s, t));
}

}  // namespace cohloop
