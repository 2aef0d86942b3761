#pragma once

#include "nclass/covariance.hpp"

namespace nclass::measures {

/// One evaluation of the Duan two-observable criterion. A positive violation
/// certifies entanglement; violation <= 0 is inconclusive on its own.
struct DuanResult {
  double zeta = -1.0;
  double lhs = 0.0;        // Var(u) + Var(v)
  double rhs = 2.0;        // zeta^2 + 1/zeta^2
  double violation = 0.0;  // rhs - lhs
};

struct LogNegativity {
  double raw = 0.0;      // may be negative for separable states
  double clamped = 0.0;  // max(0, raw)
};

struct MeasureReport {
  double ln_raw = 0.0;
  double ln = 0.0;
  double depth = 0.0;
  bool p_positive = true;
  DuanResult duan;
  bool simon_separable = true;
};

/// Var(u) + Var(v) for u = |z| x_a + x_b / z, v = |z| p_a - p_b / z with zero
/// first moments:
///   z^2 (m1 + m2) + (n1 + n2) / z^2 + 2 sign(z) (c1 - c2).
/// Throws std::domain_error for zeta == 0.
double duan_lhs(const StandardMoments& m, double zeta);

DuanResult duan_at(const StandardMoments& m, double zeta);

/// The zeta maximizing the Duan violation, zeta^2 = sqrt(n1+n2-1)/sqrt(m1+m2-1)
/// with negative sign under the c1 >= c2 convention. Throws std::domain_error
/// when a mode carries no more than vacuum total noise (m1+m2 <= 1 or
/// n1+n2 <= 1), and std::invalid_argument when c1 < c2.
double optimal_zeta(const StandardMoments& m);

/// Whether the Gaussian state with these standard moments has a regular
/// positive P function: both local variances at least vacuum and
/// (m_k - 1/2)(n_k - 1/2) >= c_k^2 for k = 1, 2. Equality counts as positive.
bool gaussian_p_positive(const StandardMoments& m);

/// Logarithmic negativity from the closed form
///   LN = -log2 sqrt(2 e),  e = D - sqrt(D^2 - 4 det),
///   D = m1 m2 + n1 n2 - 2 c1 c2,  det = (m1 n1 - c1^2)(m2 n2 - c2^2).
/// Throws std::runtime_error on numerical degeneracy (e <= 0 or
/// D^2 < 4 det beyond tolerance), which cannot occur for physical states.
LogNegativity log_negativity(const StandardMoments& m);

/// Clamped logarithmic negativity of an arbitrary two-mode state, computed
/// from the partial transpose's symplectic eigenvalues. Matrix route,
/// independent of the closed form above.
double log_negativity_matrix(const CovarianceMatrix& sigma);

/// Smallest T such that adding T to every quadrature variance yields a
/// positive P function:
///   max over k of  (1 - m_k - n_k + sqrt(4 c_k^2 + (m_k - n_k)^2)) / 2,
/// clamped below at zero.
double nonclassicality_depth(const StandardMoments& m);

/// Simon separability oracle: true iff the partial transpose (sign flip of
/// the p_b row and column) satisfies the uncertainty relation. Exact for
/// two-mode Gaussian states.
bool simon_separable(const CovarianceMatrix& sigma);

/// Bundle of every criterion for one standard-form state. The Duan entry is
/// evaluated at the optimal zeta, falling back to zeta = -1 for degenerate
/// (locally pure) states where the optimum is undefined.
MeasureReport measure_all(const StandardMoments& m);

}  // namespace nclass::measures
