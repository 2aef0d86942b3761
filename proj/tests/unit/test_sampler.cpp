#include <doctest.h>

#include "nclass/covariance.hpp"
#include "nclass/sampler.hpp"

using namespace nclass;

TEST_SUITE_BEGIN("sampler");

TEST_CASE("same (seed, index) gives bit-identical states") {
  SamplerConfig config;
  config.seed = 1;
  config.count = 4;
  const auto a = sample_state(config, 0);
  const auto b = sample_state(config, 0);
  CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() == 0.0);

  const auto c = sample_state(config, 1);
  CHECK((a.matrix() - c.matrix()).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("degenerate sampler produces the vacuum") {
  SamplerConfig config;
  config.seed = 9;
  config.count = 3;
  config.max_squeeze = 0.0;
  config.max_thermal = 0.0;
  config.mix_passive = false;
  const auto state = sample_state(config, 2);
  CHECK((state.matrix() - 0.5 * Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() ==
        0.0);

  config.mix_passive = true;  // a passive transform of the vacuum is the vacuum
  const auto mixed = sample_state(config, 2);
  CHECK((mixed.matrix() - 0.5 * Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() <
        1e-15);
}

TEST_CASE("every sample is physical") {
  SamplerConfig config;
  config.seed = 31337;
  config.count = 10000;
  config.max_squeeze = 1.2;
  config.max_thermal = 1.5;
  config.mix_passive = true;
  for (std::int64_t i = 0; i < config.count; ++i) {
    const auto state = sample_state(config, i);
    const ValidationReport report = validate(state.matrix());
    REQUIRE(report.physical);
  }
}

TEST_CASE("configuration and index validation") {
  SamplerConfig config;
  config.count = 0;
  CHECK_THROWS_AS(require_valid(config), std::invalid_argument);
  config.count = 2;
  config.max_squeeze = -1.0;
  CHECK_THROWS_AS(require_valid(config), std::invalid_argument);
  config.max_squeeze = 1.0;
  CHECK_THROWS_AS(sample_state(config, 2), std::invalid_argument);
  CHECK_THROWS_AS(sample_state(config, -1), std::invalid_argument);
}

TEST_SUITE_END();
