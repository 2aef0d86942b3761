#include "nclass/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace nclass {

Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = 1.0;
  omega(1, 0) = -1.0;
  omega(2, 3) = 1.0;
  omega(3, 2) = -1.0;
  return omega;
}

std::array<double, 2> symplectic_eigenvalues(const Eigen::Matrix4d& sigma) {
  // Eigenvalues of Omega*sigma come in +-(i nu) pairs for symmetric sigma;
  // the moduli give (nu1, nu1, nu2, nu2). For positive definite input the
  // computation reduces to self-adjoint solves on K K^T with
  // K = sigma^{1/2} Omega sigma^{1/2}, which stays accurate to machine
  // precision even when the pairs degenerate (pure states).
  const Eigen::Matrix4d sym = 0.5 * (sigma + sigma.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(sym);
  if (es.eigenvalues().minCoeff() > 0.0) {
    const Eigen::Matrix4d root = es.operatorSqrt();
    const Eigen::Matrix4d k = root * symplectic_form() * root;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es2(k * k.transpose());
    std::array<double, 4> nus{};
    for (int i = 0; i < 4; ++i)
      nus[i] = std::sqrt(std::max(es2.eigenvalues()(i), 0.0));
    return {0.5 * (nus[0] + nus[1]), 0.5 * (nus[2] + nus[3])};
  }
  // Indefinite input (reported unphysical anyway): fall back to the dense
  // complex spectrum.
  Eigen::EigenSolver<Eigen::Matrix4d> solver(symplectic_form() * sym, false);
  std::array<double, 4> mods{};
  for (int i = 0; i < 4; ++i) mods[i] = std::abs(solver.eigenvalues()(i));
  std::sort(mods.begin(), mods.end());
  return {0.5 * (mods[0] + mods[1]), 0.5 * (mods[2] + mods[3])};
}

ValidationReport validate(const Eigen::Matrix4d& sigma) {
  ValidationReport report;
  report.max_asymmetry = (sigma - sigma.transpose()).cwiseAbs().maxCoeff();
  report.symmetric = report.max_asymmetry <= kSymmetryTol;

  const Eigen::Matrix4d sym = 0.5 * (sigma + sigma.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(sym);
  report.positive_definite = es.eigenvalues().minCoeff() > 0.0;
  report.nu = symplectic_eigenvalues(sym);
  report.physical = report.positive_definite &&
                    report.nu[0] >= kVacuumVariance - kPhysicalityTol;
  return report;
}

void require_valid(const StandardMoments& m) {
  const double vars[] = {m.m1, m.m2, m.n1, m.n2};
  for (double v : vars) {
    if (!std::isfinite(v) || v <= 0.0)
      throw std::invalid_argument("standard moments: local variances must be finite and > 0");
  }
  if (!std::isfinite(m.c1) || !std::isfinite(m.c2))
    throw std::invalid_argument("standard moments: correlations must be finite");
}

CovarianceMatrix::CovarianceMatrix(const Eigen::Matrix4d& sigma) {
  if (!sigma.allFinite())
    throw std::invalid_argument("covariance matrix: entries must be finite");
  const double asym = (sigma - sigma.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol) {
    std::ostringstream msg;
    msg << "covariance matrix: not symmetric, max asymmetry " << asym;
    throw std::invalid_argument(msg.str());
  }
  sigma_ = 0.5 * (sigma + sigma.transpose());

  const ValidationReport report = validate(sigma_);
  if (!report.positive_definite)
    throw std::invalid_argument("covariance matrix: not positive definite");
  if (!report.physical) {
    std::ostringstream msg;
    msg << "covariance matrix: uncertainty relation violated, min symplectic eigenvalue "
        << report.nu[0] << " < " << kVacuumVariance;
    throw std::invalid_argument(msg.str());
  }
}

CovarianceMatrix CovarianceMatrix::vacuum() {
  return CovarianceMatrix(kVacuumVariance * Eigen::Matrix4d::Identity());
}

CovarianceMatrix CovarianceMatrix::thermal(double nbar_a, double nbar_b) {
  if (nbar_a < 0.0 || nbar_b < 0.0)
    throw std::invalid_argument("thermal occupation must be >= 0");
  Eigen::Vector4d d;
  const double ta = kVacuumVariance + nbar_a;
  const double tb = kVacuumVariance + nbar_b;
  d << ta, ta, tb, tb;
  return CovarianceMatrix(d.asDiagonal());
}

CovarianceMatrix CovarianceMatrix::two_mode_squeezed_vacuum(double r) {
  return two_mode_squeezed_thermal(r, 0.0, 0.0);
}

CovarianceMatrix CovarianceMatrix::two_mode_squeezed_thermal(double r, double nbar_a,
                                                             double nbar_b) {
  if (nbar_a < 0.0 || nbar_b < 0.0)
    throw std::invalid_argument("thermal occupation must be >= 0");
  const double ta = kVacuumVariance + nbar_a;
  const double tb = kVacuumVariance + nbar_b;
  const double ch = std::cosh(r), sh = std::sinh(r);
  Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
  // x_a' = ch x_a + sh x_b, p_a' = ch p_a - sh p_b and symmetrically for b.
  s(0, 0) = ch; s(0, 2) = sh;
  s(1, 1) = ch; s(1, 3) = -sh;
  s(2, 0) = sh; s(2, 2) = ch;
  s(3, 1) = -sh; s(3, 3) = ch;
  Eigen::Vector4d d;
  d << ta, ta, tb, tb;
  return CovarianceMatrix(s * d.asDiagonal() * s.transpose());
}

CovarianceMatrix to_covariance(const StandardMoments& m) {
  require_valid(m);
  Eigen::Matrix4d sigma = Eigen::Matrix4d::Zero();
  sigma(0, 0) = m.m1;
  sigma(1, 1) = m.m2;
  sigma(2, 2) = m.n1;
  sigma(3, 3) = m.n2;
  sigma(0, 2) = sigma(2, 0) = m.c1;
  sigma(1, 3) = sigma(3, 1) = m.c2;
  return CovarianceMatrix(sigma);
}

StandardMoments to_standard_moments(const CovarianceMatrix& sigma) {
  constexpr double kStandardTol = 1e-9;
  double worst = 0.0;
  int worst_i = 0, worst_j = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const bool standard_pos = (i == 0 && j == 2) || (i == 1 && j == 3);
      if (standard_pos) continue;
      const double v = std::abs(sigma(i, j));
      if (v > worst) {
        worst = v;
        worst_i = i;
        worst_j = j;
      }
    }
  }
  if (worst >= kStandardTol) {
    std::ostringstream msg;
    msg << "matrix is not in standard form: |sigma(" << worst_i << "," << worst_j
        << ")| = " << worst << " exceeds " << kStandardTol;
    throw std::invalid_argument(msg.str());
  }
  return StandardMoments{sigma(0, 0), sigma(1, 1), sigma(2, 2), sigma(3, 3),
                         sigma(0, 2), sigma(1, 3)};
}

LocalSymplectic::LocalSymplectic(const Eigen::Matrix2d& s_a, const Eigen::Matrix2d& s_b)
    : s_a_(s_a), s_b_(s_b) {
  if (!s_a.allFinite() || !s_b.allFinite())
    throw std::invalid_argument("local symplectic: entries must be finite");
  const double da = s_a.determinant(), db = s_b.determinant();
  if (std::abs(da - 1.0) > kSymmetryTol || std::abs(db - 1.0) > kSymmetryTol) {
    std::ostringstream msg;
    msg << "local symplectic: blocks must have unit determinant, got " << da
        << " and " << db;
    throw std::invalid_argument(msg.str());
  }
}

Eigen::Matrix4d LocalSymplectic::as_matrix() const {
  Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
  s.block<2, 2>(0, 0) = s_a_;
  s.block<2, 2>(2, 2) = s_b_;
  return s;
}

LocalSymplectic LocalSymplectic::identity() {
  return LocalSymplectic(Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity());
}

namespace {
Eigen::Matrix2d rotation2(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}
}  // namespace

LocalSymplectic LocalSymplectic::rotation(double theta_a, double theta_b) {
  return LocalSymplectic(rotation2(theta_a), rotation2(theta_b));
}

LocalSymplectic LocalSymplectic::squeeze(double s_a, double s_b) {
  if (!(s_a > 0.0) || !(s_b > 0.0))
    throw std::invalid_argument("squeeze parameters must be > 0");
  Eigen::Matrix2d a = Eigen::Matrix2d::Zero(), b = Eigen::Matrix2d::Zero();
  const double ra = std::sqrt(s_a), rb = std::sqrt(s_b);
  a(0, 0) = ra; a(1, 1) = 1.0 / ra;
  b(0, 0) = rb; b(1, 1) = 1.0 / rb;
  return LocalSymplectic(a, b);
}

LocalSymplectic LocalSymplectic::xp_swap() {
  Eigen::Matrix2d j;
  j << 0.0, -1.0, 1.0, 0.0;
  return LocalSymplectic(j, j);
}

LocalSymplectic compose(const LocalSymplectic& second, const LocalSymplectic& first) {
  return LocalSymplectic(second.block_a() * first.block_a(),
                         second.block_b() * first.block_b());
}

CovarianceMatrix apply_local(const CovarianceMatrix& sigma, const LocalSymplectic& t) {
  const Eigen::Matrix4d s = t.as_matrix();
  return CovarianceMatrix(s * sigma.matrix() * s.transpose());
}

}  // namespace nclass
