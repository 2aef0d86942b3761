#pragma once

#include <complex>
#include <string>
#include <vector>

namespace nclass::pfunc {

/// Two-term product mixture: with probability p, a noisy coherent state at
/// +beta on mode a paired with a noisy single photon on mode b; otherwise a
/// noisy coherent state at -beta paired with noisy vacuum. ("Noisy" adds one
/// unit of vacuum noise, which keeps every P function regular.) Separable by
/// construction, yet the joint P function goes negative while for p < 1/2
/// both marginals stay positive.
struct MixtureParams {
  std::complex<double> beta{2.0, 0.0};
  double p = 0.25;
};

/// Throws std::invalid_argument unless 0 <= p <= 1 and beta is finite.
void require_valid(const MixtureParams& params);

struct GridSpec {
  std::complex<double> center{0.0, 0.0};
  double half_width = 4.0;
  int points_per_axis = 161;
};

void require_valid(const GridSpec& grid);

/// P values on the real-real cut (imaginary parts held at the grid centers),
/// row-major over (a index, b index), with the global minimum and its
/// location.
struct FieldSlice {
  std::vector<double> a_coords;
  std::vector<double> b_coords;
  std::vector<double> values;  // values[ia * b_coords.size() + ib]
  double min_value = 0.0;
  double min_a = 0.0;
  double min_b = 0.0;
};

/// Joint P function of the mixture. Normalized: integrates to one over both
/// complex planes.
double p_full(const MixtureParams& params, std::complex<double> alpha_a,
              std::complex<double> alpha_b);

/// Marginal of mode a: a positive mixture of two Gaussians for every
/// parameter choice.
double p_marginal_a(const MixtureParams& params, std::complex<double> alpha_a);

/// Marginal of mode b: (2/pi) e^{-2|ab|^2} [p (4|ab|^2 - 1) + 1 - p]; dips
/// negative at the origin once p exceeds 1/2.
double p_marginal_b(const MixtureParams& params, std::complex<double> alpha_b);

/// Largest p below which the mode-b marginal is nonnegative everywhere.
/// The bracket above is minimized at the origin, giving exactly 1/2.
double marginal_b_positivity_threshold();

/// Evaluates p_full over the two real axes; deterministic row-major scan.
FieldSlice scan_cut(const MixtureParams& params, const GridSpec& grid_a,
                    const GridSpec& grid_b);

/// Gaussian-smoothed P: convolution with (1/(pi T)) e^{-|d|^2 / T} per
/// complex plane, which adds T to every quadrature variance. Closed form:
/// each Gaussian-polynomial term convolves to another one. Throws
/// std::domain_error for T <= 0.
double smoothed_p(const MixtureParams& params, double T,
                  std::complex<double> alpha_a, std::complex<double> alpha_b);

/// Smallest T (bisection to 1e-4 over [0, 1]) for which the smoothed P is
/// nonnegative on the real-real grid of half-width 6 with 241 points per
/// axis. Returns 0 when the unsmoothed P is already nonnegative there.
double depth_of_mixture(const MixtureParams& params);

}  // namespace nclass::pfunc
