#include "nclass/mc_study.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "nclass/canonical.hpp"
#include "nclass/measures.hpp"
#include "nclass/parallel.hpp"
#include "nclass/random.hpp"

namespace nclass::mc {

namespace {

StudyRecord record_for(std::int64_t id, const CovarianceMatrix& state) {
  StudyRecord rec;
  rec.state_id = id;
  try {
    const canonical::CanonicalResult cr = canonical::canonicalize(state);
    rec.converged = cr.converged;
    rec.residual_balance = cr.residual_balance;
    rec.residual_match = cr.residual_match;
    rec.depth = measures::nonclassicality_depth(cr.moments);
    rec.ln = measures::log_negativity(cr.moments).clamped;
  } catch (const std::exception&) {
    rec.converged = false;
    rec.depth = std::numeric_limits<double>::quiet_NaN();
    rec.ln = std::numeric_limits<double>::quiet_NaN();
  }
  return rec;
}

}  // namespace

std::vector<StudyRecord> run_study(const SamplerConfig& config) {
  require_valid(config);
  std::vector<StudyRecord> records(config.count);
  parallel_for(config.count, [&](std::int64_t i) {
    try {
      records[i] = record_for(i, sample_state(config, i));
    } catch (const std::exception&) {
      records[i].state_id = i;
      records[i].converged = false;
      records[i].depth = std::numeric_limits<double>::quiet_NaN();
      records[i].ln = std::numeric_limits<double>::quiet_NaN();
    }
  });
  return records;
}

std::vector<StudyRecord> run_symmetric_study(const SamplerConfig& config,
                                             double bin_width, double max_depth) {
  require_valid(config);
  if (!(bin_width > 0.0) || !(max_depth > bin_width) || max_depth >= 0.5)
    throw std::invalid_argument("symmetric study: need 0 < bin_width < max_depth < 0.5");
  const auto n_targets = static_cast<std::int64_t>(max_depth / bin_width);

  std::vector<StudyRecord> records(config.count);
  parallel_for(config.count, [&](std::int64_t i) {
    // Depth target at the center of bin (i mod n_targets): bin membership is
    // immune to the ~1e-16 jitter of recomputing the depth.
    const double target = (static_cast<double>(i % n_targets) + 0.5) * bin_width;
    SplitMix64 rng = substream(config.seed ^ 0x5ca1ab1eULL, static_cast<std::uint64_t>(i));

    // Minimal m for which the m = n member of this level set is physical.
    const double floor_mn = (target * target - target + 0.5) / (1.0 - 2.0 * target);

    StandardMoments moments;
    bool found = false;
    for (int attempt = 0; attempt < 200 && !found; ++attempt) {
      const double m = rng.uniform(floor_mn + 0.02, floor_mn + 1.52);
      const double n = rng.uniform(floor_mn + 0.02, floor_mn + 1.52);
      const double w = 2.0 * target - 1.0 + m + n;
      const double c2 = 0.25 * (w * w - (m - n) * (m - n));
      if (c2 <= 0.0) continue;
      const double c = std::sqrt(c2);
      moments = StandardMoments{m, m, n, n, c, -c};
      try {
        const auto nu = symplectic_eigenvalues(to_covariance(moments).matrix());
        found = nu[0] >= kVacuumVariance + 1e-9;
      } catch (const std::exception&) {
        found = false;
      }
    }
    if (!found) {
      // m = n member, physical for any m above the floor.
      const double m = floor_mn + 0.75;
      const double c = m - kVacuumVariance + target;
      moments = StandardMoments{m, m, m, m, c, -c};
    }
    records[i] = record_for(i, to_covariance(moments));
  });
  return records;
}

RelationReport relation_analysis(const std::vector<StudyRecord>& records,
                                 double bin_width) {
  if (!(bin_width > 0.0))
    throw std::invalid_argument("relation_analysis: bin width must be > 0");
  RelationReport report;
  report.bin_width = bin_width;
  report.n_records = static_cast<std::int64_t>(records.size());

  std::map<std::int64_t, BinStat> bins;
  for (const StudyRecord& rec : records) {
    if (!rec.converged || !std::isfinite(rec.depth) || !std::isfinite(rec.ln)) continue;
    ++report.n_converged;
    const auto idx = static_cast<std::int64_t>(std::floor(rec.depth / bin_width));
    auto [it, fresh] = bins.try_emplace(idx);
    BinStat& bin = it->second;
    if (fresh) {
      bin.index = idx;
      bin.ln_min = bin.ln_max = rec.ln;
    } else {
      bin.ln_min = std::min(bin.ln_min, rec.ln);
      bin.ln_max = std::max(bin.ln_max, rec.ln);
    }
    ++bin.count;
  }
  if (report.n_converged < 100)
    throw std::invalid_argument("relation_analysis: fewer than 100 converged records");

  for (auto& [idx, bin] : bins) {
    bin.spread = bin.ln_max - bin.ln_min;
    report.max_spread = std::max(report.max_spread, bin.spread);
    report.bins.push_back(bin);
  }
  return report;
}

double symmetric_e(double m, double n, double c) {
  const double delta = m * m + n * n + 2.0 * c * c;
  const double root = m * n - c * c;
  const double det = root * root;
  const double disc = std::max(delta * delta - 4.0 * det, 0.0);
  return delta - std::sqrt(disc);
}

double symmetric_depth_raw(double m, double n, double c) {
  return 0.5 * (1.0 - m - n + std::hypot(2.0 * c, m - n));
}

PerturbationResult perturbation_identity(const PerturbationSpec& spec) {
  const double m = spec.m, n = spec.n, c = spec.c, dc = spec.delta_c;
  const StandardMoments base{m, m, n, n, c, -c};
  const CovarianceMatrix base_state = to_covariance(base);  // throws if unphysical
  if (measures::log_negativity(base).raw <= 0.0)
    throw std::invalid_argument("perturbation_identity: base state must be entangled");
  if (std::abs(dc) > 0.1 * std::abs(c))
    throw std::invalid_argument("perturbation_identity: |delta_c| capped at 0.1 |c|");

  // Depth preservation fixes delta_m + delta_n once the split is chosen.
  const double w = std::hypot(2.0 * c, m - n);
  const double w_prime = std::hypot(2.0 * (c + dc), m - n + spec.split);
  const double sum = w_prime - w;
  PerturbationResult result;
  result.delta_m = 0.5 * (sum + spec.split);
  result.delta_n = 0.5 * (sum - spec.split);
  result.chi = m + n - w;

  const double mp = m + result.delta_m, np = n + result.delta_n, cp = c + dc;
  try {
    (void)to_covariance(StandardMoments{mp, mp, np, np, cp, -cp});
  } catch (const std::exception&) {
    throw std::invalid_argument("perturbation_identity: perturbed state is unphysical");
  }

  result.delta_e_expansion =
      2.0 * (dc * dc + 2.0 * c * dc - result.delta_m * result.delta_n -
             m * result.delta_n - n * result.delta_m) +
      result.chi * (result.delta_m + result.delta_n);
  result.delta_e_direct = symmetric_e(mp, np, cp) - symmetric_e(m, n, c);
  result.delta_depth = symmetric_depth_raw(mp, np, cp) - symmetric_depth_raw(m, n, c);
  if (std::abs(result.delta_depth) > spec.tolerance) {
    std::ostringstream msg;
    msg << "perturbation_identity: depth drifted by " << result.delta_depth;
    throw std::runtime_error(msg.str());
  }
  return result;
}

}  // namespace nclass::mc
