#include <doctest.h>

#include <filesystem>

#include "nclass/canonical.hpp"
#include "nclass/io.hpp"
#include "nclass/measures.hpp"
#include "nclass/mc_study.hpp"
#include "nclass/pfunc.hpp"

using namespace nclass;

TEST_SUITE_BEGIN("io");

TEST_CASE("covariance JSON round trip validates symmetry on load") {
  const auto tmsv = CovarianceMatrix::two_mode_squeezed_vacuum(0.4);
  const auto back = io::covariance_from_json(io::to_json(tmsv));
  CHECK((back.matrix() - tmsv.matrix()).cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS(io::covariance_from_json(
      R"({"sigma": [[0.5, 0.1, 0, 0], [0, 0.5, 0, 0], [0, 0, 0.5, 0], [0, 0, 0, 0.5]]})"));
  CHECK_THROWS(io::covariance_from_json(R"({"sigma": [[1, 2], [3, 4]]})"));
  CHECK_THROWS(io::covariance_from_json("not json"));
}

TEST_CASE("moments JSON round trip") {
  const StandardMoments m{0.9, 0.7, 1.4, 1.1, 0.35, -0.2};
  const StandardMoments back = io::moments_from_json(io::to_json(m));
  CHECK(back.m1 == m.m1);
  CHECK(back.c2 == m.c2);

  const auto state = io::state_from_json(io::to_json(m));
  CHECK(state(0, 0) == m.m1);
  CHECK(state(1, 3) == m.c2);
}

TEST_CASE("measure report carries the stable keys") {
  const auto report = measures::measure_all(
      to_standard_moments(CovarianceMatrix::two_mode_squeezed_vacuum(0.5)));
  const std::string text = io::to_json(report);
  for (const char* key : {"ln_raw", "ln", "depth", "p_positive", "duan_zeta",
                          "duan_lhs", "duan_violation", "simon_separable"})
    CHECK(text.find(key) != std::string::npos);
}

TEST_CASE("canonical result JSON includes transform blocks and residuals") {
  const auto result =
      canonical::canonicalize(CovarianceMatrix::two_mode_squeezed_vacuum(0.3));
  const std::string text = io::to_json(result);
  for (const char* key : {"moments", "s_a", "s_b", "residual_balance",
                          "residual_match", "converged", "iterations"})
    CHECK(text.find(key) != std::string::npos);
}

TEST_CASE("slice CSV has the fixed header and nine significant digits") {
  pfunc::GridSpec grid;
  grid.points_per_axis = 5;
  grid.half_width = 1.0;
  const auto slice =
      pfunc::scan_cut(pfunc::MixtureParams{{2.0, 0.0}, 0.25}, grid, grid);
  const std::string csv = io::to_csv(slice);
  CHECK(csv.rfind("alpha_ar,alpha_br,P\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 26);  // header + 25 rows

  const std::string summary = io::slice_summary_json(slice);
  CHECK(summary.find("argmin") != std::string::npos);
  CHECK(summary.find("grid") != std::string::npos);
}

TEST_CASE("study CSV has the fixed header and flags") {
  std::vector<mc::StudyRecord> records{{0, 0.1, 0.2, true, 0, 0},
                                       {1, 0.3, 0.4, false, 0, 0}};
  const std::string csv = io::to_csv(records);
  CHECK(csv.rfind("state_id,depth,ln,converged\n", 0) == 0);
  CHECK(csv.find(",1\n") != std::string::npos);
  CHECK(csv.find(",0\n") != std::string::npos);
}

TEST_CASE("file helpers") {
  const auto dir = std::filesystem::temp_directory_path() / "nclass_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "x.json").string();
  io::write_file(path, "{\"m1\": 1}\n");
  CHECK(io::read_file(path) == "{\"m1\": 1}\n");
  CHECK_THROWS(io::read_file((dir / "missing.json").string()));
  CHECK_THROWS(io::write_file((dir / "nope" / "x.json").string(), "x"));
  std::filesystem::remove_all(dir);
}

TEST_SUITE_END();
