#pragma once

#include <string>

#include "nclass/canonical.hpp"
#include "nclass/covariance.hpp"
#include "nclass/measures.hpp"
#include "nclass/mc_study.hpp"
#include "nclass/pfunc.hpp"

namespace nclass::io {

// JSON schemas. Covariance matrices: {"sigma": [[...4 rows of 4...]]},
// row-major, symmetry validated on load. Moments: {"m1": ..., ..., "c2": ...}.
// Measure reports use the stable keys ln_raw, ln, depth, p_positive,
// duan_zeta, duan_lhs, duan_violation, simon_separable.

std::string to_json(const CovarianceMatrix& sigma, int indent = 2);
CovarianceMatrix covariance_from_json(const std::string& text);

std::string to_json(const StandardMoments& m, int indent = 2);
StandardMoments moments_from_json(const std::string& text);

/// Detects the schema by its keys and returns a covariance matrix either way.
CovarianceMatrix state_from_json(const std::string& text);

/// Raw 4x4 entries of either schema without any physicality check, so that
/// callers can produce a validation report for bad states.
Eigen::Matrix4d raw_state_from_json(const std::string& text);

std::string to_json(const measures::MeasureReport& report, int indent = 2);
std::string to_json(const ValidationReport& report, int indent = 2);
std::string to_json(const canonical::CanonicalResult& result, int indent = 2);
std::string to_json(const mc::RelationReport& report, int indent = 2);

/// CSV with header `alpha_ar,alpha_br,P`, row-major, 9 significant digits.
std::string to_csv(const pfunc::FieldSlice& slice);
/// JSON summary of a slice: global minimum, its location and the grid shape.
std::string slice_summary_json(const pfunc::FieldSlice& slice, int indent = 2);

/// CSV with header `state_id,depth,ln,converged`.
std::string to_csv(const std::vector<mc::StudyRecord>& records);

/// Reads/writes whole files; throws std::runtime_error on I/O failure.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace nclass::io
