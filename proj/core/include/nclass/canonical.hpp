#pragma once

#include <utility>

#include "nclass/covariance.hpp"

namespace nclass::canonical {

/// Result of driving a state into the canonical form in which a positive
/// Gaussian P function is equivalent to separability.
///
/// The two residuals are the canonical conditions evaluated at the returned
/// moments (primes denote the transformed state, brackets are variances
/// minus the vacuum 1/2):
///   balance:  (m1'-1/2)(n2'-1/2) - (n1'-1/2)(m2'-1/2)            == 0
///   match:    sqrt((m1'-1/2)(n1'-1/2)) - sqrt((m2'-1/2)(n2'-1/2))
///             - (|c1'| - |c2'|)                                  == 0
struct CanonicalResult {
  StandardMoments moments;
  LocalSymplectic transform = LocalSymplectic::identity();
  double residual_balance = 0.0;
  double residual_match = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Local rotations and squeezings that zero the intra-mode x-p covariances
/// and diagonalize the cross block. Output satisfies c1 >= |c2| and has
/// isotropic local blocks; an input already in standard form (with c1 >= c2)
/// is returned unchanged with the identity transform.
std::pair<StandardMoments, LocalSymplectic> reduce_to_standard_form(
    const CovarianceMatrix& sigma);

/// Finds per-mode squeezings s_a, s_b > 0 (x_k -> sqrt(s_k) x_k,
/// p_k -> p_k / sqrt(s_k)) zeroing both canonical residuals. Damped 2D
/// Newton iteration on (log s_a, log s_b) with the analytic Jacobian,
/// starting from s_a = s_b = 1, with a bracketed 1D bisection fallback.
/// Spread restarts guard against multiple roots; if two roots disagree on
/// the P-positivity verdict a std::runtime_error is thrown.
///
/// Preconditions: moments in standard form with c1 >= c2 and local variances
/// at least vacuum (std::domain_error below 1/2 - 1e-12: such input is
/// locally nonclassical and must be reduced first). States with all
/// variance brackets at zero lie on a degenerate solution manifold and are
/// tie-broken to s_a = s_b = 1.
CanonicalResult solve_squeezings(const StandardMoments& m);

/// reduce_to_standard_form followed by solve_squeezings, transforms composed.
/// On the output moments, gaussian_p_positive matches simon_separable of the
/// input state.
CanonicalResult canonicalize(const CovarianceMatrix& sigma);

}  // namespace nclass::canonical
