#include <doctest.h>

#include <cmath>

#include "nclass/pfunc.hpp"
#include "nclass/random.hpp"
#include "oracles.hpp"

using namespace nclass;
using namespace nclass::pfunc;

namespace {
constexpr double kPi = 3.14159265358979323846;
const MixtureParams kDemo{{2.0, 0.0}, 0.25};
}  // namespace

TEST_SUITE_BEGIN("pfunc");

TEST_CASE("joint P at the negativity hotspot") {
  // At alpha_a = beta, alpha_b = 0 the photon term contributes -4p/pi^2 and
  // the displaced term is exponentially small.
  const double expected =
      -4.0 * 0.25 / (kPi * kPi) + (4.0 * 0.75 / (kPi * kPi)) * std::exp(-32.0);
  CHECK(p_full(kDemo, {2.0, 0.0}, {0.0, 0.0}) ==
        doctest::Approx(expected).epsilon(1e-14));
  CHECK(p_full(kDemo, {2.0, 0.0}, {0.0, 0.0}) < -0.1);
}

TEST_CASE("p = 0 keeps the joint P a positive Gaussian") {
  const MixtureParams gauss{{2.0, 0.0}, 0.0};
  SplitMix64 rng(3);
  for (int k = 0; k < 200; ++k) {
    const std::complex<double> a(rng.uniform(-5, 5), rng.uniform(-5, 5));
    const std::complex<double> b(rng.uniform(-5, 5), rng.uniform(-5, 5));
    CHECK(p_full(gauss, a, b) >= 0.0);
  }
}

TEST_CASE("normalization: 4D quadrature equals one") {
  SplitMix64 rng(424242);
  for (int k = 0; k < 2; ++k) {
    const MixtureParams params{{rng.uniform(-2, 2), rng.uniform(-2, 2)},
                               rng.uniform(0.0, 1.0)};
    CHECK(oracles::pfull_quadrature(params) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("marginals: closed forms and positivity") {
  SplitMix64 rng(4);
  for (int k = 0; k < 100; ++k) {
    const MixtureParams params{{rng.uniform(-2, 2), rng.uniform(-2, 2)},
                               rng.uniform(0.0, 1.0)};
    const std::complex<double> a(rng.uniform(-4, 4), rng.uniform(-4, 4));
    CHECK(p_marginal_a(params, a) >= 0.0);  // sum of positive Gaussians
  }

  CHECK(p_marginal_b(kDemo, {0.0, 0.0}) ==
        doctest::Approx(1.0 / kPi).epsilon(1e-12));
  CHECK(p_marginal_b(kDemo, {0.0, 0.0}) == doctest::Approx(0.318310).epsilon(1e-6));
  CHECK(p_marginal_b(MixtureParams{{2.0, 0.0}, 0.75}, {0.0, 0.0}) ==
        doctest::Approx(-1.0 / kPi).epsilon(1e-12));
}

TEST_CASE("marginals agree with integrating the joint") {
  const std::complex<double> spots[] = {{0.3, -0.6}, {2.0, 0.0}, {-1.4, 0.9}};
  for (const auto& s : spots) {
    CHECK(std::abs(oracles::marginal_a_numeric(kDemo, s) - p_marginal_a(kDemo, s)) <
          1e-6);
    CHECK(std::abs(oracles::marginal_b_numeric(kDemo, s) - p_marginal_b(kDemo, s)) <
          1e-6);
  }
}

TEST_CASE("marginal positivity threshold sits at one half") {
  CHECK(marginal_b_positivity_threshold() == 0.5);

  auto b_grid_min = [](double p) {
    const MixtureParams params{{2.0, 0.0}, p};
    double best = 1.0;
    for (int i = 0; i <= 400; ++i)
      for (int j = 0; j <= 40; ++j) {
        const std::complex<double> b(-4.0 + i * 0.02, j * 0.02);
        best = std::min(best, p_marginal_b(params, b));
      }
    return best;
  };
  CHECK(b_grid_min(0.49) >= 0.0);
  CHECK(b_grid_min(0.51) < 0.0);
}

TEST_CASE("the headline phenomenon: classical marginals, negative joint") {
  const GridSpec grid;  // half-width 4, 161 points
  const FieldSlice slice = scan_cut(kDemo, grid, grid);
  CHECK(slice.min_value < -0.1);
  CHECK(slice.min_a == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(slice.min_b == doctest::Approx(0.0).epsilon(1e-12));

  for (double x = -4.0; x <= 4.0; x += 0.05) {
    CHECK(p_marginal_a(kDemo, {x, 0.0}) >= -1e-12);
    CHECK(p_marginal_b(kDemo, {x, 0.0}) >= -1e-12);
  }
}

TEST_CASE("scan_cut basics") {
  const MixtureParams gauss{{2.0, 0.0}, 0.0};
  const GridSpec grid;
  CHECK(scan_cut(gauss, grid, grid).min_value >= 0.0);

  // Refinement stability: doubling the resolution barely moves the minimum.
  GridSpec fine;
  fine.points_per_axis = 321;
  const double coarse_min = scan_cut(kDemo, grid, grid).min_value;
  const double fine_min = scan_cut(kDemo, fine, fine).min_value;
  CHECK(std::abs(coarse_min - fine_min) < 1e-3);

  // Deterministic output.
  const FieldSlice s1 = scan_cut(kDemo, grid, grid);
  const FieldSlice s2 = scan_cut(kDemo, grid, grid);
  CHECK(s1.values == s2.values);

  CHECK_THROWS_AS(scan_cut(kDemo, GridSpec{{0, 0}, -1.0, 161}, grid),
                  std::invalid_argument);
  CHECK_THROWS_AS(scan_cut(kDemo, GridSpec{{0, 0}, 4.0, 1}, grid),
                  std::invalid_argument);
}

TEST_CASE("smoothing: delta-kernel limit and domain") {
  const std::complex<double> spots[] = {{2.0, 0.0}, {0.5, 0.5}, {-2.2, 0.1}};
  for (const auto& a : spots)
    for (const auto& b : spots) {
      CHECK(std::abs(smoothed_p(kDemo, 1e-4, a, b) - p_full(kDemo, a, b)) < 1e-4);
    }
  CHECK_THROWS_AS(smoothed_p(kDemo, 0.0, {0, 0}, {0, 0}), std::domain_error);
  CHECK_THROWS_AS(smoothed_p(kDemo, -0.3, {0, 0}, {0, 0}), std::domain_error);
}

TEST_CASE("smoothing matches direct numeric convolution") {
  struct Spot {
    double T;
    std::complex<double> a, b;
  };
  const Spot spots[] = {{0.25, {2.0, 0.0}, {0.0, 0.0}},
                        {0.40, {1.0, -0.5}, {0.3, 0.2}},
                        {0.60, {-2.0, 0.0}, {0.0, 0.6}},
                        {0.30, {0.0, 0.0}, {1.0, 0.0}},
                        {0.50, {2.5, 0.5}, {-0.4, -0.4}}};
  for (const auto& s : spots) {
    const double closed = smoothed_p(kDemo, s.T, s.a, s.b);
    const double numeric = oracles::smoothed_numeric(kDemo, s.T, s.a, s.b);
    CHECK(std::abs(closed - numeric) < 1e-6);
  }
}

TEST_CASE("smoothing preserves normalization") {
  // The smoothed family at T is the original family with every factor's
  // variance grown by T, so the same quadrature oracle applies after scaling.
  const double T = 0.3;
  const double integral = oracles::trapezoid2d(
      [&](double ar, double ai) {
        return oracles::trapezoid2d(
            [&](double br, double bi) {
              return smoothed_p(kDemo, T, {ar, ai}, {br, bi});
            },
            -7.0, 7.0, 57);
      },
      -9.0, 9.0, 73);
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("smoothing by 0.6 clears the demo family") {
  constexpr int n = 161;
  double best = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::complex<double> a(-4.0 + i * 0.05, 0.0);
      const std::complex<double> b(-4.0 + j * 0.05, 0.0);
      best = std::min(best, smoothed_p(kDemo, 0.6, a, b));
    }
  CHECK(best >= 0.0);
}

TEST_CASE("p = 0 stays positive under any smoothing") {
  const MixtureParams gauss{{2.0, 0.0}, 0.0};
  SplitMix64 rng(6);
  for (int k = 0; k < 100; ++k) {
    const std::complex<double> a(rng.uniform(-5, 5), rng.uniform(-5, 5));
    const std::complex<double> b(rng.uniform(-5, 5), rng.uniform(-5, 5));
    CHECK(smoothed_p(gauss, rng.uniform(0.01, 1.0), a, b) >= 0.0);
  }
}

TEST_CASE("depth of the mixture family") {
  CHECK(depth_of_mixture(MixtureParams{{2.0, 0.0}, 0.0}) == 0.0);

  // Noisy single photon alone: the analytic smoothing threshold is 1/2 and
  // the bisection lands on it exactly.
  const double lone = depth_of_mixture(MixtureParams{{0.0, 0.0}, 1.0});
  CHECK(lone == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(lone > 0.0);
  CHECK(lone < 1.0);

  const double lighter = depth_of_mixture(kDemo);
  const double heavier = depth_of_mixture(MixtureParams{{2.0, 0.0}, 0.75});
  CHECK(lighter <= heavier);

  // Rotating the coherent amplitude cannot change the depth.
  CHECK(depth_of_mixture(MixtureParams{{0.0, 2.0}, 0.25}) == lighter);
  CHECK(depth_of_mixture(MixtureParams{{-2.0, 0.0}, 0.25}) == lighter);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(require_valid(MixtureParams{{2.0, 0.0}, 1.2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(require_valid(MixtureParams{{2.0, 0.0}, -0.1}),
                  std::invalid_argument);
}

TEST_SUITE_END();
