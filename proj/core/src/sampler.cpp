#include "nclass/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "nclass/random.hpp"

namespace nclass {

void require_valid(const SamplerConfig& config) {
  if (config.count < 1)
    throw std::invalid_argument("sampler config: count must be >= 1");
  if (!std::isfinite(config.max_squeeze) || config.max_squeeze < 0.0)
    throw std::invalid_argument("sampler config: max_squeeze must be finite and >= 0");
  if (!std::isfinite(config.max_thermal) || config.max_thermal < 0.0)
    throw std::invalid_argument("sampler config: max_thermal must be finite and >= 0");
}

namespace {

// Two-mode passive symplectic: per-mode phases, a beamsplitter, phases again.
Eigen::Matrix4d random_passive(SplitMix64& rng) {
  const double phi_a = rng.uniform(0.0, 2.0 * M_PI);
  const double phi_b = rng.uniform(0.0, 2.0 * M_PI);
  const double theta = rng.uniform(0.0, 2.0 * M_PI);
  const double psi_a = rng.uniform(0.0, 2.0 * M_PI);
  const double psi_b = rng.uniform(0.0, 2.0 * M_PI);

  auto rot = [](double t) {
    Eigen::Matrix2d r;
    r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    return r;
  };
  Eigen::Matrix4d pre = Eigen::Matrix4d::Zero(), post = Eigen::Matrix4d::Zero();
  pre.block<2, 2>(0, 0) = rot(psi_a);
  pre.block<2, 2>(2, 2) = rot(psi_b);
  post.block<2, 2>(0, 0) = rot(phi_a);
  post.block<2, 2>(2, 2) = rot(phi_b);

  Eigen::Matrix4d bs = Eigen::Matrix4d::Zero();
  const double c = std::cos(theta), s = std::sin(theta);
  bs.block<2, 2>(0, 0) = c * Eigen::Matrix2d::Identity();
  bs.block<2, 2>(0, 2) = s * Eigen::Matrix2d::Identity();
  bs.block<2, 2>(2, 0) = -s * Eigen::Matrix2d::Identity();
  bs.block<2, 2>(2, 2) = c * Eigen::Matrix2d::Identity();

  return post * bs * pre;
}

}  // namespace

CovarianceMatrix sample_state(const SamplerConfig& config, std::int64_t index) {
  require_valid(config);
  if (index < 0 || index >= config.count)
    throw std::invalid_argument("sample index out of range");

  SplitMix64 rng = substream(config.seed, static_cast<std::uint64_t>(index));
  const double r = rng.uniform(0.0, config.max_squeeze);
  const double nbar_a = rng.uniform(0.0, config.max_thermal);
  const double nbar_b = rng.uniform(0.0, config.max_thermal);

  CovarianceMatrix state = CovarianceMatrix::two_mode_squeezed_thermal(r, nbar_a, nbar_b);
  if (!config.mix_passive) return state;

  const Eigen::Matrix4d s = random_passive(rng);
  return CovarianceMatrix(s * state.matrix() * s.transpose());
}

}  // namespace nclass
