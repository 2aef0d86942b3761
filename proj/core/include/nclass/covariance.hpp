#pragma once

#include <Eigen/Dense>
#include <array>

namespace nclass {

// Conventions used throughout: quadratures obey [x, p] = i, so the vacuum
// variance is 1/2 per quadrature. Mode ordering is (x_a, p_a, x_b, p_b).
inline constexpr double kVacuumVariance = 0.5;
inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kPhysicalityTol = 1e-10;

/// The 4x4 symplectic form Omega for the (x_a, p_a, x_b, p_b) ordering.
Eigen::Matrix4d symplectic_form();

/// Symplectic eigenvalues of a symmetric 4x4 matrix: the two distinct moduli
/// of the eigenvalues of i*Omega*sigma, sorted ascending.
std::array<double, 2> symplectic_eigenvalues(const Eigen::Matrix4d& sigma);

struct ValidationReport {
  bool symmetric = false;
  double max_asymmetry = 0.0;
  bool positive_definite = false;
  bool physical = false;  // min symplectic eigenvalue >= 1/2 - tol
  std::array<double, 2> nu{0.0, 0.0};
};

/// Inspects a raw matrix and reports symmetry, positive definiteness and the
/// uncertainty relation. Never throws; construction of CovarianceMatrix is
/// what rejects bad input.
ValidationReport validate(const Eigen::Matrix4d& sigma);

/// Second moments of the six standard-form positions. Plain value type; the
/// entries are only required to be finite with positive local variances, so
/// that criteria can also be evaluated on deliberately deflated moment sets.
struct StandardMoments {
  double m1 = kVacuumVariance;  // <x_a^2>
  double m2 = kVacuumVariance;  // <p_a^2>
  double n1 = kVacuumVariance;  // <x_b^2>
  double n2 = kVacuumVariance;  // <p_b^2>
  double c1 = 0.0;              // <x_a x_b>
  double c2 = 0.0;              // <p_a p_b>
};

/// Throws std::invalid_argument unless all variances are finite and positive.
void require_valid(const StandardMoments& m);

/// Two-mode covariance matrix. Valid instances are symmetric to 1e-12,
/// positive definite and satisfy the uncertainty relation to 1e-10.
class CovarianceMatrix {
 public:
  /// Throws std::invalid_argument naming the defect (max asymmetry for
  /// non-symmetric input, eigenvalues for unphysical input).
  explicit CovarianceMatrix(const Eigen::Matrix4d& sigma);

  const Eigen::Matrix4d& matrix() const { return sigma_; }
  double operator()(int i, int j) const { return sigma_(i, j); }

  static CovarianceMatrix vacuum();
  /// Product of thermal states with mean occupations nbar_a, nbar_b >= 0.
  static CovarianceMatrix thermal(double nbar_a, double nbar_b);
  static CovarianceMatrix two_mode_squeezed_vacuum(double r);
  /// Two-mode squeezing applied to a thermal product state.
  static CovarianceMatrix two_mode_squeezed_thermal(double r, double nbar_a,
                                                    double nbar_b);

 private:
  Eigen::Matrix4d sigma_;
};

/// Embeds standard moments as a covariance matrix
/// (diagonal local blocks, diagonal cross block). Throws if unphysical.
CovarianceMatrix to_covariance(const StandardMoments& m);

/// Extracts the six standard moments. Requires every other entry to be below
/// 1e-9 in magnitude; throws std::invalid_argument reporting the largest
/// offending entry otherwise.
StandardMoments to_standard_moments(const CovarianceMatrix& sigma);

/// Local Gaussian unitary at the covariance level: one 2x2 symplectic block
/// per mode, each with unit determinant (to 1e-12).
class LocalSymplectic {
 public:
  LocalSymplectic(const Eigen::Matrix2d& s_a, const Eigen::Matrix2d& s_b);

  const Eigen::Matrix2d& block_a() const { return s_a_; }
  const Eigen::Matrix2d& block_b() const { return s_b_; }
  Eigen::Matrix4d as_matrix() const;

  static LocalSymplectic identity();
  /// Phase rotations by theta_a, theta_b.
  static LocalSymplectic rotation(double theta_a, double theta_b);
  /// x_k -> sqrt(s_k) x_k, p_k -> p_k / sqrt(s_k); s_a, s_b > 0.
  static LocalSymplectic squeeze(double s_a, double s_b);
  /// pi/2 rotation on both modes, exchanging the roles of x and p.
  static LocalSymplectic xp_swap();

 private:
  Eigen::Matrix2d s_a_, s_b_;
};

/// Composition acting as second after first: (second*first) sigma = S2 S1 sigma.
LocalSymplectic compose(const LocalSymplectic& second, const LocalSymplectic& first);

/// sigma -> S sigma S^T. Symplectic eigenvalues are preserved, so the result
/// is physical whenever the input is.
CovarianceMatrix apply_local(const CovarianceMatrix& sigma, const LocalSymplectic& t);

}  // namespace nclass
