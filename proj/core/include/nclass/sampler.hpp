#pragma once

#include <cstdint>

#include "nclass/covariance.hpp"

namespace nclass {

/// Parameters of the reproducible random-state generator.
struct SamplerConfig {
  std::uint64_t seed = 1;
  std::int64_t count = 1;
  double max_squeeze = 1.0;   // upper bound on the two-mode squeezing r
  double max_thermal = 1.0;   // upper bound on the per-mode mean occupation
  bool mix_passive = true;    // follow with a random passive transformation
};

/// Throws std::invalid_argument if count < 1 or the bounds are not finite
/// and non-negative.
void require_valid(const SamplerConfig& config);

/// Deterministic function of (config.seed, index): a two-mode squeezed
/// thermal state with r ~ U(0, max_squeeze) and per-mode occupation
/// ~ U(0, max_thermal), optionally followed by a random passive
/// transformation (per-mode phases and a beamsplitter). Passive mixing is
/// what takes the samples outside the symmetric standard-form subclass.
/// Always physical by construction.
CovarianceMatrix sample_state(const SamplerConfig& config, std::int64_t index);

}  // namespace nclass
