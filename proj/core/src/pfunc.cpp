#include "nclass/pfunc.hpp"

#include <cmath>
#include <stdexcept>

#include "nclass/parallel.hpp"

namespace nclass::pfunc {

namespace {

constexpr double kPi = 3.14159265358979323846;

double norm2(std::complex<double> z) { return std::norm(z); }

// Unit-normalized single-mode factors.
double coherent_blob(std::complex<double> alpha, std::complex<double> mu) {
  return (2.0 / kPi) * std::exp(-2.0 * norm2(alpha - mu));
}

double noisy_photon(std::complex<double> alpha) {
  const double t = norm2(alpha);
  return (2.0 / kPi) * (4.0 * t - 1.0) * std::exp(-2.0 * t);
}

// Their Gaussian-smoothed counterparts; w = 1 + 2T is the variance growth
// factor. The kernel (1/(pi T)) e^{-|d|^2/T} keeps each factor normalized.
double coherent_blob_smoothed(std::complex<double> alpha, std::complex<double> mu,
                              double w) {
  return (2.0 / (kPi * w)) * std::exp(-2.0 * norm2(alpha - mu) / w);
}

double noisy_photon_smoothed(std::complex<double> alpha, double T, double w) {
  const double t = norm2(alpha);
  const double poly = 4.0 * t / (w * w) + (2.0 * T - 1.0) / w;
  return (2.0 / (kPi * w)) * poly * std::exp(-2.0 * t / w);
}

}  // namespace

void require_valid(const MixtureParams& params) {
  if (!(params.p >= 0.0 && params.p <= 1.0))
    throw std::invalid_argument("mixture params: p must lie in [0, 1]");
  if (!std::isfinite(params.beta.real()) || !std::isfinite(params.beta.imag()))
    throw std::invalid_argument("mixture params: beta must be finite");
}

void require_valid(const GridSpec& grid) {
  if (grid.points_per_axis < 2)
    throw std::invalid_argument("grid spec: points_per_axis must be >= 2");
  if (!(grid.half_width > 0.0) || !std::isfinite(grid.half_width))
    throw std::invalid_argument("grid spec: half_width must be finite and > 0");
}

double p_full(const MixtureParams& params, std::complex<double> alpha_a,
              std::complex<double> alpha_b) {
  require_valid(params);
  return params.p * coherent_blob(alpha_a, params.beta) * noisy_photon(alpha_b) +
         (1.0 - params.p) * coherent_blob(alpha_a, -params.beta) *
             coherent_blob(alpha_b, 0.0);
}

double p_marginal_a(const MixtureParams& params, std::complex<double> alpha_a) {
  require_valid(params);
  return params.p * coherent_blob(alpha_a, params.beta) +
         (1.0 - params.p) * coherent_blob(alpha_a, -params.beta);
}

double p_marginal_b(const MixtureParams& params, std::complex<double> alpha_b) {
  require_valid(params);
  return params.p * noisy_photon(alpha_b) +
         (1.0 - params.p) * coherent_blob(alpha_b, 0.0);
}

double marginal_b_positivity_threshold() { return 0.5; }

FieldSlice scan_cut(const MixtureParams& params, const GridSpec& grid_a,
                    const GridSpec& grid_b) {
  require_valid(params);
  require_valid(grid_a);
  require_valid(grid_b);

  const int na = grid_a.points_per_axis, nb = grid_b.points_per_axis;
  FieldSlice slice;
  slice.a_coords.resize(na);
  slice.b_coords.resize(nb);
  slice.values.resize(static_cast<std::size_t>(na) * nb);

  const double step_a = 2.0 * grid_a.half_width / (na - 1);
  const double step_b = 2.0 * grid_b.half_width / (nb - 1);
  for (int i = 0; i < na; ++i)
    slice.a_coords[i] = grid_a.center.real() - grid_a.half_width + i * step_a;
  for (int j = 0; j < nb; ++j)
    slice.b_coords[j] = grid_b.center.real() - grid_b.half_width + j * step_b;

  parallel_for(na, [&](std::int64_t i) {
    const std::complex<double> aa(slice.a_coords[i], grid_a.center.imag());
    for (int j = 0; j < nb; ++j) {
      const std::complex<double> ab(slice.b_coords[j], grid_b.center.imag());
      slice.values[static_cast<std::size_t>(i) * nb + j] = p_full(params, aa, ab);
    }
  });

  slice.min_value = slice.values[0];
  slice.min_a = slice.a_coords[0];
  slice.min_b = slice.b_coords[0];
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      const double v = slice.values[static_cast<std::size_t>(i) * nb + j];
      if (v < slice.min_value) {
        slice.min_value = v;
        slice.min_a = slice.a_coords[i];
        slice.min_b = slice.b_coords[j];
      }
    }
  return slice;
}

double smoothed_p(const MixtureParams& params, double T,
                  std::complex<double> alpha_a, std::complex<double> alpha_b) {
  require_valid(params);
  if (!(T > 0.0) || !std::isfinite(T))
    throw std::domain_error("smoothed_p: T must be finite and > 0");
  const double w = 1.0 + 2.0 * T;
  return params.p * coherent_blob_smoothed(alpha_a, params.beta, w) *
             noisy_photon_smoothed(alpha_b, T, w) +
         (1.0 - params.p) * coherent_blob_smoothed(alpha_a, -params.beta, w) *
             coherent_blob_smoothed(alpha_b, 0.0, w);
}

namespace {

// Grid minimum used by the depth bisection. The joint minimum of the smoothed
// mixture lies on the real-real plane (both mode-b factors are radial and the
// mode-a factors are monotone in the distance to the real axis).
double grid_min(const MixtureParams& params, double T) {
  constexpr int kPoints = 241;
  constexpr double kHalfWidth = 6.0;
  const double step = 2.0 * kHalfWidth / (kPoints - 1);
  std::vector<double> row_min(kPoints);
  parallel_for(kPoints, [&](std::int64_t i) {
    const std::complex<double> aa(-kHalfWidth + i * step, 0.0);
    double best = T > 0.0 ? smoothed_p(params, T, aa, {-kHalfWidth, 0.0})
                          : p_full(params, aa, {-kHalfWidth, 0.0});
    for (int j = 0; j < kPoints; ++j) {
      const std::complex<double> ab(-kHalfWidth + j * step, 0.0);
      const double v =
          T > 0.0 ? smoothed_p(params, T, aa, ab) : p_full(params, aa, ab);
      best = std::min(best, v);
    }
    row_min[i] = best;
  });
  double best = row_min[0];
  for (double v : row_min) best = std::min(best, v);
  return best;
}

}  // namespace

double depth_of_mixture(const MixtureParams& params) {
  require_valid(params);
  // A phase rotation of mode a maps the family with amplitude beta onto the
  // family with |beta| and leaves the P function's range untouched, so the
  // real-real grid then contains the global minimum at (|beta|, 0).
  const MixtureParams aligned{{std::abs(params.beta), 0.0}, params.p};
  if (grid_min(aligned, 0.0) >= 0.0) return 0.0;

  double lo = 0.0, hi = 1.0;
  if (grid_min(aligned, hi) < 0.0)
    throw std::runtime_error("depth_of_mixture: no positive bracket at T = 1");
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    if (grid_min(aligned, mid) >= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace nclass::pfunc
