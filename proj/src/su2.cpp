#include "cohloop/su2.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

namespace cohloop {

SU2Element SU2Element::from_matrix(complexd m00, complexd m01, complexd m10, complexd m11) {
  const complexd det = m00 * m11 - m01 * m10;
  const double row1 = std::norm(m00) + std::norm(m01);
  const double row2 = std::norm(m10) + std::norm(m11);
  const double cross = std::abs(m00 * std::conj(m10) + m01 * std::conj(m11));
  if (std::abs(det - complexd(1.0, 0.0)) > 1e-12 || std::abs(row1 - 1.0) > 1e-12 ||
      std::abs(row2 - 1.0) > 1e-12 || cross > 1e-12)
    throw std::invalid_argument("SU2Element::from_matrix: matrix is not in SU(2)");
  // Canonical projection symmetrizes rounding noise between the two rows.
  const complexd a = 0.5 * (m00 + std::conj(m11));
  const complexd b = 0.5 * (m01 - std::conj(m10));
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  return SU2Element(a / n, b / n);
}

SU2Element SU2Element::axis_angle(const Vec3& axis, double chi) {
  const Vec3 n = axis.normalized();
  const double c = std::cos(0.5 * chi), s = std::sin(0.5 * chi);
  // cos(chi/2) I + i sin(chi/2) ((-n_x, n_y, n_z) . sigma); the reflected
  // axis compensates the orientation of the Hopf projection in use here, so
  // that the element covers the rotation about n itself.  The z- and y-axis
  // cases reduce to U_z and U_y.
  return SU2Element(complexd(c, s * n.z), complexd(s * n.y, -s * n.x));
}

Rotation3 rotation_of(const SU2Element& g) {
  // Columns of the rotation are the images of the coordinate axes under the
  // Hopf projection of the fibre action, which keeps the two actions aligned
  // by construction.
  const auto column = [&g](const Vec3& e) {
    return g.apply(fiber_point_of(e)).project_vector();
  };
  return Rotation3::from_columns(column(Vec3{1, 0, 0}), column(Vec3{0, 1, 0}),
                                 column(Vec3{0, 0, 1}));
}

RepVector& RepVector::operator+=(const RepVector& o) {
  if (!(level_ == o.level_)) throw std::invalid_argument("RepVector: level mismatch");
  for (int a = 0; a < dim(); ++a) c_[a] += o.c_[a];
  return *this;
}

RepVector& RepVector::operator-=(const RepVector& o) {
  if (!(level_ == o.level_)) throw std::invalid_argument("RepVector: level mismatch");
  for (int a = 0; a < dim(); ++a) c_[a] -= o.c_[a];
  return *this;
}

RepVector& RepVector::operator*=(complexd s) {
  for (auto& c : c_) c *= s;
  return *this;
}

double RepVector::norm() const {
  double s = 0.0;
  for (const auto& c : c_) s += std::norm(c);
  return std::sqrt(s);
}

double log_basis_norm_coeff(RepLevel level, int a) {
  if (a < 0 || a > level.k)
    throw std::invalid_argument("basis_norm_coeff: index out of range");
  return 0.5 * (std::log(static_cast<double>(level.k + 1) / TWO_PI) +
                log_binomial(level.k, a));
}

double basis_norm_coeff(RepLevel level, int a) {
  return std::exp(log_basis_norm_coeff(level, a));
}

std::vector<complexd> monomial_basis_values(RepLevel level, const HopfPoint& p) {
  const int k = level.k;
  std::vector<complexd> out(level.dim());
  // e_a[p] = N_a q1^a q2^(k-a); assemble magnitude in log space and phases
  // exactly, so levels of a few hundred stay finite.
  const double r1 = std::abs(p.q1);
  const double r2 = std::abs(p.q2);
  const double a1 = std::arg(p.q1);
  const double a2 = std::arg(p.q2);
  for (int a = 0; a <= k; ++a) {
    double logmag = log_basis_norm_coeff(level, a);
    logmag += xlogy(static_cast<double>(a), r1) + xlogy(static_cast<double>(k - a), r2);
    if (logmag == -std::numeric_limits<double>::infinity()) {
      out[a] = complexd(0.0, 0.0);
    } else {
      out[a] = std::exp(logmag) * cis(a * a1 + (k - a) * a2);
    }
  }
  return out;
}

complexd evaluate_section(const RepVector& v, const HopfPoint& p) {
  const auto basis = monomial_basis_values(v.level(), p);
  complexd s(0.0, 0.0);
  for (int a = 0; a < v.dim(); ++a) s += v[a] * basis[a];
  return s;
}

complexd rep_inner(const RepVector& v, const RepVector& w) {
  if (!(v.level() == w.level())) throw std::invalid_argument("rep_inner: level mismatch");
  complexd s(0.0, 0.0);
  for (int a = 0; a < v.dim(); ++a) s += std::conj(v[a]) * w[a];
  return s;
}

RepVector jz_apply(const RepVector& v) {
  RepVector out(v.level());
  const int k = v.level().k;
  for (int a = 0; a <= k; ++a) out[a] = 0.5 * (k - 2 * a) * v[a];
  return out;
}

namespace {

/// Eigendecomposition of the y-rotation generator at a fixed level.
///
/// In the weight basis the generator J_y is complex antisymmetric
/// tridiagonal; conjugating by D = diag(i^a) turns it into a real symmetric
/// tridiagonal matrix with zero diagonal and off-diagonal entries
/// -(1/2) sqrt((a+1)(k-a)).  Its eigenvalues are exactly the magnetic
/// numbers m = -j..j, which we snap onto the exact grid, leaving the
/// numerical error entirely in the orthogonal eigenvectors.
struct YRotationBasis {
  Eigen::MatrixXd q;          // orthonormal eigenvectors, columns ordered by m
  std::vector<double> m;      // snapped eigenvalues, ascending: -j, -j+1, ...

  explicit YRotationBasis(int k) {
    const int n = k + 1;
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a + 1 <= k; ++a) {
      const double off = -0.5 * std::sqrt(static_cast<double>(a + 1) * (k - a));
      tri(a, a + 1) = off;
      tri(a + 1, a) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(tri);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("y-rotation eigensolve failed");
    q = solver.eigenvectors();
    m.resize(n);
    const double j = 0.5 * k;
    for (int l = 0; l < n; ++l) {
      const double exact = -j + l;
      if (std::abs(solver.eigenvalues()[l] - exact) > 1e-8 * n)
        throw std::runtime_error("y-rotation eigenvalues off the weight grid");
      m[l] = exact;
    }
  }
};

const YRotationBasis& y_rotation_basis(int k) {
  static std::map<int, std::unique_ptr<YRotationBasis>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it == cache.end())
    it = cache.emplace(k, std::make_unique<YRotationBasis>(k)).first;
  return *it->second;
}

/// i^a as an exact complex unit.
complexd i_pow(int a) {
  switch (((a % 4) + 4) % 4) {
    case 0: return complexd(1.0, 0.0);
    case 1: return complexd(0.0, 1.0);
    case 2: return complexd(-1.0, 0.0);
    default: return complexd(0.0, -1.0);
  }
}

/// Applies U_y(beta) = D Q e^{i beta diag(m)} Q^T D^{-1} to the coefficients.
void y_rotate_inplace(RepLevel level, double beta, std::vector<complexd>& c) {
  const int n = level.dim();
  const auto& basis = y_rotation_basis(level.k);
  std::vector<complexd> mixed(n, complexd(0.0, 0.0));
  // w = Q^T D^{-1} c
  for (int l = 0; l < n; ++l) {
    complexd acc(0.0, 0.0);
    for (int a = 0; a < n; ++a) acc += basis.q(a, l) * (std::conj(i_pow(a)) * c[a]);
    mixed[l] = acc * cis(beta * basis.m[l]);
  }
  for (int a = 0; a < n; ++a) {
    complexd acc(0.0, 0.0);
    for (int l = 0; l < n; ++l) acc += basis.q(a, l) * mixed[l];
    c[a] = i_pow(a) * acc;
  }
}

/// Applies U_z(phi), which is diagonal with phases e^{i m phi} on weight m.
void z_rotate_inplace(RepLevel level, double phi, std::vector<complexd>& c) {
  for (int a = 0; a < level.dim(); ++a) c[a] *= cis(0.5 * (level.k - 2 * a) * phi);
}

}  // namespace

RepVector act(const SU2Element& g, const RepVector& v) {
  const complexd a = g.m00();
  const complexd b = g.m01();
  RepVector out = v;
  std::vector<complexd> c(v.coeffs());

  // Euler angles of g = U_z(alpha) U_y(beta) U_z(gamma).
  const double beta = 2.0 * std::atan2(std::abs(b), std::abs(a));
  double alpha = 0.0, gamma = 0.0;
  if (std::abs(b) < 1e-300) {
    gamma = 2.0 * std::arg(a);
  } else if (std::abs(a) < 1e-300) {
    gamma = -2.0 * std::arg(b);
  } else {
    alpha = std::arg(a) + std::arg(b);
    gamma = std::arg(a) - std::arg(b);
  }

  z_rotate_inplace(v.level(), gamma, c);
  if (beta != 0.0) y_rotate_inplace(v.level(), beta, c);
  z_rotate_inplace(v.level(), alpha, c);
  for (int i = 0; i < v.dim(); ++i) out[i] = c[i];
  return out;
}

double wigner_d_exact(RepLevel level, HalfInt m2, HalfInt m1, double beta) {
  const int a2 = weight_index(level, m2);
  const int a1 = weight_index(level, m1);
  const auto& basis = y_rotation_basis(level.k);
  const int n = level.dim();
  complexd acc(0.0, 0.0);
  for (int l = 0; l < n; ++l)
    acc += basis.q(a2, l) * basis.q(a1, l) * cis(beta * basis.m[l]);
  // U_y = D Q e^{i beta diag(m)} Q^T D^{-1} with D = diag(i^a), so the
  // (a2, a1) element carries the phase i^{a2} (-i)^{a1} = i^{a2-a1}.
  acc *= i_pow(a2 - a1);
  if (std::abs(acc.imag()) > 1e-10)
    throw std::runtime_error("wigner_d_exact: matrix element is not real");
  return acc.real();
}

std::vector<std::vector<double>> wigner_d_matrix(RepLevel level, double beta) {
  const int n = level.dim();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int a1 = 0; a1 < n; ++a1) {
    RepVector v = RepVector::basis(level, a1);
    std::vector<complexd> c(v.coeffs());
    y_rotate_inplace(level, beta, c);
    for (int a2 = 0; a2 < n; ++a2) {
      if (std::abs(c[a2].imag()) > 1e-10)
        throw std::runtime_error("wigner_d_matrix: matrix element is not real");
      d[a2][a1] = c[a2].real();
    }
  }
  return d;
}

}  // namespace cohloop
