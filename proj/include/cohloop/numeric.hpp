#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace cohloop {

using complexd = std::complex<double>;

inline constexpr double PI = 3.14159265358979323846;
inline constexpr double TWO_PI = 2.0 * PI;

/// log of the binomial coefficient C(n, k), evaluated through lgamma so that
/// levels up to a few hundred stay representable.
inline double log_binomial(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("log_binomial: index out of range");
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

inline double binomial(int n, int k) { return std::exp(log_binomial(n, k)); }

/// a * log(r) with the convention 0 * log(0) = 0, so that r^a can be built in
/// log space without NaNs at the boundary exponents.
inline double xlogy(double a, double r) {
  if (a == 0.0) return 0.0;
  return a * std::log(r);
}

inline complexd cis(double phase) { return complexd(std::cos(phase), std::sin(phase)); }

/// z^n for integer n >= 0 via exp(n log z); exact zero base handled explicitly.
inline complexd pow_int(const complexd& z, int n) {
  if (n == 0) return complexd(1.0, 0.0);
  const double r = std::abs(z);
  if (r == 0.0) return complexd(0.0, 0.0);
  return std::exp(n * std::log(r)) * cis(n * std::arg(z));
}

/// Ratio of two complex numbers known to differ by a unit scalar, projected
/// back onto the unit circle.
inline complexd unit_ratio(const complexd& num, const complexd& den) {
  const complexd r = num / den;
  const double m = std::abs(r);
  if (m < 1e-8) throw std::invalid_argument("unit_ratio: degenerate ratio");
  return r / m;
}

inline double wrap_positive(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  return r;
}

namespace detail {
inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0) throw std::runtime_error("adaptive_simpson: recursion depth exhausted");
  // sharp local peaks keep halving the tolerance demand; once it drops below
  // the rounding floor of the local values nothing further can be gained
  const double floor_tol =
      4e-16 * (std::abs(whole) + std::abs(left) + std::abs(right) + 1e-300);
  if (std::abs(delta) <= 15.0 * std::max(tol, floor_tol)) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

/// Adaptive Simpson quadrature on [a, b] (a > b allowed, giving the signed
/// integral).  Intended for the smooth 1-d integrands in this library; depth
/// is capped so genuinely singular integrands fail loudly.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

/// Format a double with 17 significant digits (round-trip safe).
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

}  // namespace cohloop
