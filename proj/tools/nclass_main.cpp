// nclass: command-line surface of the two-mode nonclassicality toolkit.
//
// Subcommands: pfunc-cut, measures, canonicalize, mc-study. Exit codes:
// 0 success, 2 usage error, 3 unphysical/ill-formed state, 4 solver failure,
// 5 I/O failure. All outputs are deterministic given the flags.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nclass/canonical.hpp"
#include "nclass/covariance.hpp"
#include "nclass/io.hpp"
#include "nclass/mc_study.hpp"
#include "nclass/measures.hpp"
#include "nclass/pfunc.hpp"
#include "nclass/sampler.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitUnphysical = 3;
constexpr int kExitSolver = 4;
constexpr int kExitIo = 5;

// Config files mirror a subcommand's long flag names as a flat JSON object,
// e.g. {"beta": 2.0, "p": 0.25}. Values fill in flags that were not given on
// the command line, so explicit flags always win.
class FlagMirror {
 public:
  explicit FlagMirror(CLI::App* cmd) : cmd_(cmd) {
    cmd->add_option("--config", path_, "JSON file mirroring the flags");
  }

  template <typename T>
  CLI::Option* option(const std::string& name, T& var, const std::string& help) {
    CLI::Option* opt = cmd_->add_option(name, var, help);
    setters_.push_back({opt, [&var](const nlohmann::json& v) { var = v.get<T>(); }});
    return opt;
  }

  CLI::Option* flag(const std::string& name, bool& var, const std::string& help) {
    CLI::Option* opt = cmd_->add_flag(name, var, help);
    setters_.push_back({opt, [&var](const nlohmann::json& v) { var = v.get<bool>(); }});
    return opt;
  }

  /// Loads the config file (if any) after parsing. Returns false and prints
  /// a message for unreadable files, unknown keys or type mismatches.
  bool apply() {
    if (path_.empty()) return true;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(nclass::io::read_file(path_));
    } catch (const std::exception& e) {
      std::cerr << "error: config: " << e.what() << "\n";
      return false;
    }
    if (!j.is_object()) {
      std::cerr << "error: config file must hold a JSON object of flag values\n";
      return false;
    }
    for (const auto& [key, value] : j.items()) {
      bool known = false;
      for (auto& [opt, set] : setters_) {
        const auto& lnames = opt->get_lnames();
        if (std::find(lnames.begin(), lnames.end(), key) == lnames.end()) continue;
        known = true;
        if (opt->count() == 0) {
          try {
            set(value);
          } catch (const std::exception&) {
            std::cerr << "error: config: bad value for \"" << key << "\"\n";
            return false;
          }
          config_set_.push_back(opt);
        }
        break;
      }
      if (!known) {
        std::cerr << "error: config: unknown key \"" << key << "\"\n";
        return false;
      }
    }
    return true;
  }

  /// Whether the option received a value from the command line or the config.
  bool provided(const CLI::Option* opt) const {
    return opt->count() > 0 ||
           std::find(config_set_.begin(), config_set_.end(), opt) != config_set_.end();
  }

 private:
  CLI::App* cmd_;
  std::string path_;
  std::vector<std::pair<CLI::Option*, std::function<void(const nlohmann::json&)>>> setters_;
  std::vector<const CLI::Option*> config_set_;
};

struct PfuncArgs {
  double beta_re = 0.0, beta_im = 0.0, p = 0.0;
  bool beta_given = false, p_given = false, paper_params = false;
  double half_width = 4.0;
  int points = 161;
  std::string output_prefix = "pfunc_cut";
};

int run_pfunc_cut(const PfuncArgs& args) {
  nclass::pfunc::MixtureParams params;
  if (args.paper_params) {
    params.beta = {2.0, 0.0};
    params.p = 0.75;
    std::cerr << "note: reference parameters beta = 2, p = 0.75 make the mode-b "
                 "marginal dip below zero at the origin; choose p < 0.5 for "
                 "positive marginals\n";
  } else {
    if (!args.beta_given || !args.p_given) {
      std::cerr << "error: --beta and --p are required (or pass --paper-params)\n";
      return kExitUsage;
    }
    params.beta = {args.beta_re, args.beta_im};
    params.p = args.p;
  }

  nclass::pfunc::GridSpec grid;
  grid.half_width = args.half_width;
  grid.points_per_axis = args.points;
  try {
    nclass::pfunc::require_valid(params);
    nclass::pfunc::require_valid(grid);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const nclass::pfunc::FieldSlice slice = nclass::pfunc::scan_cut(params, grid, grid);
  const std::string summary = nclass::io::slice_summary_json(slice);
  try {
    nclass::io::write_file(args.output_prefix + ".csv", nclass::io::to_csv(slice));
    nclass::io::write_file(args.output_prefix + ".json", summary + "\n");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  std::cout << summary << "\n";
  return 0;
}

struct StateInput {
  std::string input_path;
  double tmsv_r = 0.0;
  bool tmsv_given = false;

  bool one_source() const {
    return (tmsv_given ? 1 : 0) + (input_path.empty() ? 0 : 1) == 1;
  }
};

// Loads and validates a state; on failure prints a validation report or error
// and stores the exit code.
std::optional<nclass::CovarianceMatrix> load_state(const StateInput& in, int* code) {
  std::string text;
  try {
    if (in.tmsv_given)
      return nclass::CovarianceMatrix::two_mode_squeezed_vacuum(in.tmsv_r);
    text = nclass::io::read_file(in.input_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    *code = kExitIo;
    return std::nullopt;
  }
  try {
    const Eigen::Matrix4d raw = nclass::io::raw_state_from_json(text);
    const nclass::ValidationReport report = nclass::validate(raw);
    if (!report.symmetric || !report.physical) {
      std::cerr << nclass::io::to_json(report) << "\n"
                << "error: state is not a physical covariance matrix\n";
      *code = kExitUnphysical;
      return std::nullopt;
    }
    return nclass::CovarianceMatrix(raw);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    *code = kExitUnphysical;
    return std::nullopt;
  }
}

int run_measures(const StateInput& in, const std::string& output) {
  int code = 0;
  const auto state = load_state(in, &code);
  if (!state) return code;

  nclass::measures::MeasureReport report;
  try {
    report = nclass::measures::measure_all(nclass::to_standard_moments(*state));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what()
              << "\nhint: run `nclass canonicalize` to bring a state into standard form\n";
    return kExitUnphysical;
  }
  const std::string text = nclass::io::to_json(report);
  if (!output.empty()) {
    try {
      nclass::io::write_file(output, text + "\n");
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitIo;
    }
  }
  std::cout << text << "\n";
  return 0;
}

int run_canonicalize(const StateInput& in, const std::string& output) {
  int code = 0;
  const auto state = load_state(in, &code);
  if (!state) return code;

  nclass::canonical::CanonicalResult result;
  try {
    result = nclass::canonical::canonicalize(*state);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }

  nlohmann::json j = nlohmann::json::parse(nclass::io::to_json(result, -1));
  j["p_positive"] = nclass::measures::gaussian_p_positive(result.moments);
  j["simon_separable"] = nclass::measures::simon_separable(*state);
  const std::string text = j.dump(2);
  if (!output.empty()) {
    try {
      nclass::io::write_file(output, text + "\n");
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitIo;
    }
  }
  std::cout << text << "\n";
  if (!result.converged) {
    std::cerr << "error: squeezing solver did not converge, residuals ("
              << result.residual_balance << ", " << result.residual_match << ")\n";
    return kExitSolver;
  }
  return 0;
}

struct StudyArgs {
  std::uint64_t seed = 1;
  std::int64_t count = 0;
  bool symmetric = false;
  double max_squeeze = 1.0;
  double max_thermal = 1.0;
  bool mix_passive = true;
  double bin_width = 1e-3;
  double max_depth = 0.4;
  std::string out_csv = "study.csv";
  std::string out_json = "study_analysis.json";
};

int run_mc_study(const StudyArgs& args) {
  if (args.count < 1) {
    std::cerr << "error: --count must be >= 1\n";
    return kExitUsage;
  }
  nclass::SamplerConfig config;
  config.seed = args.seed;
  config.count = args.count;
  config.max_squeeze = args.max_squeeze;
  config.max_thermal = args.max_thermal;
  config.mix_passive = args.mix_passive;

  std::vector<nclass::mc::StudyRecord> records;
  try {
    records = args.symmetric
                  ? nclass::mc::run_symmetric_study(config, args.bin_width, args.max_depth)
                  : nclass::mc::run_study(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string analysis;
  try {
    analysis = nclass::io::to_json(nclass::mc::relation_analysis(records, args.bin_width));
  } catch (const std::invalid_argument& e) {
    nlohmann::json j{{"n_records", records.size()},
                     {"max_spread", nullptr},
                     {"bins", nlohmann::json::array()},
                     {"note", e.what()}};
    analysis = j.dump(2);
  }

  try {
    nclass::io::write_file(args.out_csv, nclass::io::to_csv(records));
    nclass::io::write_file(args.out_json, analysis + "\n");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  std::cout << analysis << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-mode Gaussian nonclassicality and entanglement toolkit"};
  app.require_subcommand(1);

  PfuncArgs pf;
  CLI::App* pfunc = app.add_subcommand(
      "pfunc-cut", "Scan the joint P function of the product-mixture family "
                   "on the real-real plane and export CSV + JSON");
  FlagMirror pfunc_cfg(pfunc);
  auto* beta_opt = pfunc_cfg.option("--beta", pf.beta_re, "Coherent amplitude (real part)");
  pfunc_cfg.option("--beta-imag", pf.beta_im, "Coherent amplitude (imaginary part)");
  auto* p_opt = pfunc_cfg.option("--p", pf.p, "Mixing probability in [0, 1]");
  pfunc_cfg.flag("--paper-params", pf.paper_params,
                 "Use the reference parameter set beta = 2, p = 0.75");
  pfunc_cfg.option("--half-width", pf.half_width, "Grid half width")
      ->capture_default_str();
  pfunc_cfg.option("--points", pf.points, "Grid points per axis")
      ->capture_default_str();
  pfunc_cfg.option("--output-prefix", pf.output_prefix,
                   "Writes <prefix>.csv and <prefix>.json")
      ->capture_default_str();

  StateInput meas_state;
  std::string measures_output;
  CLI::App* meas = app.add_subcommand(
      "measures", "Evaluate every criterion for a standard-form state");
  FlagMirror meas_cfg(meas);
  meas_cfg.option("--input", meas_state.input_path,
                  "State JSON ({\"sigma\": 4x4} or moment keys)");
  auto* meas_tmsv = meas_cfg.option("--tmsv", meas_state.tmsv_r,
                                    "Two-mode squeezed vacuum shortcut, r");
  meas_cfg.option("--output", measures_output, "Also write the report here");

  StateInput can_state;
  std::string can_output;
  CLI::App* canon = app.add_subcommand(
      "canonicalize", "Reduce a state to the canonical form in which positive "
                      "Gaussian P is equivalent to separability");
  FlagMirror canon_cfg(canon);
  canon_cfg.option("--input", can_state.input_path, "State JSON");
  auto* can_tmsv = canon_cfg.option("--tmsv", can_state.tmsv_r,
                                    "Two-mode squeezed vacuum shortcut, r");
  canon_cfg.option("--output", can_output, "Also write the result here");

  StudyArgs study;
  CLI::App* mc = app.add_subcommand(
      "mc-study", "Depth-versus-negativity study over random states");
  FlagMirror mc_cfg(mc);
  mc_cfg.option("--seed", study.seed, "Sampler seed")->capture_default_str();
  mc_cfg.option("--count", study.count, "Number of states");
  mc_cfg.flag("--symmetric", study.symmetric,
              "Sample the symmetric subclass on exact depth level sets");
  mc_cfg.option("--max-squeeze", study.max_squeeze, "Squeezing bound")
      ->capture_default_str();
  mc_cfg.option("--max-thermal", study.max_thermal, "Thermal occupation bound")
      ->capture_default_str();
  mc_cfg.flag("--mix-passive,!--no-mix-passive", study.mix_passive,
              "Apply a random passive transformation to each sample");
  mc_cfg.option("--bin-width", study.bin_width, "Depth bin width")
      ->capture_default_str();
  mc_cfg.option("--max-depth", study.max_depth,
                "Depth coverage of the symmetric study")
      ->capture_default_str();
  mc_cfg.option("--out-csv", study.out_csv, "Study CSV path")->capture_default_str();
  mc_cfg.option("--out-json", study.out_json, "Analysis JSON path")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (pfunc->parsed()) {
    if (!pfunc_cfg.apply()) return kExitUsage;
    pf.beta_given = pfunc_cfg.provided(beta_opt);
    pf.p_given = pfunc_cfg.provided(p_opt);
    return run_pfunc_cut(pf);
  }
  if (meas->parsed()) {
    if (!meas_cfg.apply()) return kExitUsage;
    meas_state.tmsv_given = meas_cfg.provided(meas_tmsv);
    if (!meas_state.one_source()) {
      std::cerr << "error: exactly one of --input or --tmsv is required\n";
      return kExitUsage;
    }
    return run_measures(meas_state, measures_output);
  }
  if (canon->parsed()) {
    if (!canon_cfg.apply()) return kExitUsage;
    can_state.tmsv_given = canon_cfg.provided(can_tmsv);
    if (!can_state.one_source()) {
      std::cerr << "error: exactly one of --input or --tmsv is required\n";
      return kExitUsage;
    }
    return run_canonicalize(can_state, can_output);
  }
  if (mc->parsed()) {
    if (!mc_cfg.apply()) return kExitUsage;
    return run_mc_study(study);
  }
  return kExitUsage;
}
