#pragma once

#include <cstdint>
#include <vector>

#include "nclass/sampler.hpp"

namespace nclass::mc {

struct StudyRecord {
  std::int64_t state_id = 0;
  double depth = 0.0;
  double ln = 0.0;
  bool converged = false;
  double residual_balance = 0.0;
  double residual_match = 0.0;
};

/// Samples config.count states, canonicalizes each and records the
/// nonclassicality depth and clamped logarithmic negativity of the canonical
/// moments. Deterministic given the seed; canonicalization failures are
/// recorded with converged = false (values NaN), never dropped.
std::vector<StudyRecord> run_study(const SamplerConfig& config);

/// Same pipeline restricted to the symmetric subclass (m1 = m2, n1 = n2,
/// c1 = -c2 exactly, already canonical). States are drawn on depth level
/// sets centered on the analysis bins: every record in a bin shares the
/// same depth to machine precision, so the per-bin spread of ln directly
/// probes whether depth determines entanglement. Depth targets cover
/// (0, max_depth); max_depth must stay below 1/2.
std::vector<StudyRecord> run_symmetric_study(const SamplerConfig& config,
                                             double bin_width = 1e-3,
                                             double max_depth = 0.4);

struct BinStat {
  std::int64_t index = 0;  // depth in [index*width, (index+1)*width)
  std::int64_t count = 0;
  double ln_min = 0.0;
  double ln_max = 0.0;
  double spread = 0.0;
};

struct RelationReport {
  double bin_width = 1e-3;
  std::int64_t n_records = 0;
  std::int64_t n_converged = 0;
  double max_spread = 0.0;
  std::vector<BinStat> bins;
};

/// Bins converged records by depth and reports the per-bin spread
/// (max - min) of ln. Throws std::invalid_argument with fewer than 100
/// converged records.
RelationReport relation_analysis(const std::vector<StudyRecord>& records,
                                 double bin_width = 1e-3);

/// Symmetric canonical state (m1 = m2 = m, n1 = n2 = n, c1 = -c2 = c) plus a
/// correlation perturbation. delta_c is capped at 0.1 |c|; split selects
/// delta_m - delta_n (the depth constraint only fixes the sum).
struct PerturbationSpec {
  double m = 0.0;
  double n = 0.0;
  double c = 0.0;
  double delta_c = 0.0;
  double split = 0.0;
  double tolerance = 1e-10;  // permitted residual depth drift
};

struct PerturbationResult {
  double delta_m = 0.0;
  double delta_n = 0.0;
  double chi = 0.0;
  double delta_e_expansion = 0.0;  // second-order expansion with chi
  double delta_e_direct = 0.0;     // e' - e recomputed from the states
  double delta_depth = 0.0;
};

/// e = D - sqrt(D^2 - 4 det) for the symmetric state, the quantity whose
/// square root fixes the logarithmic negativity.
double symmetric_e(double m, double n, double c);

/// Unclamped nonclassicality depth of the symmetric state,
/// (1 - m - n + sqrt(4c^2 + (m-n)^2)) / 2.
double symmetric_depth_raw(double m, double n, double c);

/// Chooses (delta_m, delta_n) with the given split so that the perturbed
/// state has exactly the same nonclassicality depth, then evaluates the
/// entanglement difference two independent ways: through the chi expansion
/// (chi = m + n - sqrt(4c^2 + (m-n)^2)) and by recomputing e' - e directly.
/// Both vanish for depth-preserving perturbations. Throws when the base
/// state is not physical and entangled, when |delta_c| > 0.1 |c|, or when
/// the perturbed state is unphysical.
PerturbationResult perturbation_identity(const PerturbationSpec& spec);

}  // namespace nclass::mc
