#pragma once

// Declarative experiment runner behind the qrcbench tool.

#include "qrc/bounds.hpp"
#include "qrc/channels.hpp"
#include "qrc/learning.hpp"
#include "qrc/processes.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qrc::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitInvalidBound = 2, kExitConfigError = 64 };

/// Schema violation; `path` is the dotted location of the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  [[nodiscard]] const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct ChannelConfig {
  std::string variant = "ptr";
  int n = 2;
  std::optional<std::size_t> theta_size;  // overrides the grid size in bounds

  double epsilon_ptr = 0.1;
  int coupling_draws = 2;
  std::uint64_t coupling_seed = 1;
  std::vector<double> gammas{0.5, 1.0};
  std::vector<double> taus{1.0, 2.0};

  std::vector<double> alphas{0.2, 0.5};
  double r0 = 0.4;
  double r1 = 0.4;
  double epsilon_rrr = 0.1;
  std::vector<std::string> sigmas{"maximally_mixed", "zero"};
  std::uint64_t unitary_seed = 7;
  std::optional<double> fault_base_r;  // replaces r0 in the built T0, constants unchanged
};

struct ReadoutConfig {
  std::string kind = "poly";  // poly | lin | sm
  int r_max = 1;
  double c_max = 1.0;
  int ell = 1;
  int ell_max = 1;
};

struct ProcessConfig {
  double lambda_v = 0.5;
  double lambda_y = 0.5;
  double m_xi = 1.0;
  int delay = 0;
  std::optional<double> v_scale;  // default: the filter range fills the input domain
  std::optional<double> v_shift;  // default: the domain midpoint
  double y_scale = 1.0;
  bool independent_target = false;
  int truncation = 0;
};

struct RunConfig {
  std::size_t m = 100;
  int k = 16;
  std::vector<int> ks;
  int mc_reps = 200;
  double delta = 0.1;
  double washout_tol = 1e-10;
  std::uint64_t seed = 1;
  std::size_t n_mc = 2000;
  std::size_t e_loss_samples = 100000;
  std::optional<double> e_loss_zero;
  C4Scope c4_scope = C4Scope::InsideLossFactor;
  bool verbatim_lin_r_max = false;
  LogBase log_base = LogBase::E;
};

struct SweepConfig {
  std::string axis = "m";  // n | m | k | r_max | epsilon | alpha_min
  std::vector<double> values;
};

struct VerifyConfig {
  int pairs = 50;
  int inputs = 10;
  int steps = 40;
};

struct OutputConfig {
  std::string dir = "qrcbench-out";
  std::vector<std::string> formats{"json", "csv"};
};

struct ExperimentConfig {
  ChannelConfig channel;
  ReadoutConfig readout;
  ProcessConfig process;
  LossFunction loss = LossFunction::absolute();
  RunConfig run;
  SweepConfig sweep;
  VerifyConfig verify;
  OutputConfig output;
};

/// Validates against the schema (unknown keys rejected) and fills defaults.
ExperimentConfig parse_config(const nlohmann::json& config);

std::uint64_t fnv1a64(std::string_view bytes);
/// FNV-1a of the sorted-key compact dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

/// Derived objects shared by all subcommands.
struct Experiment {
  ExperimentConfig config;
  InputDomain domain;
  ChannelConstants constants;  // theoretical r, L_R
  ProcessSpec process;
  ProcessConstants process_constants;
  std::size_t theta_size = 1;
  double alpha_min = 0.0;

  [[nodiscard]] std::vector<ReservoirMapPtr> channels() const;
  [[nodiscard]] ReadoutSpace readout_space() const;
  [[nodiscard]] double l_h_bar() const;
};

Experiment make_experiment(const ExperimentConfig& config);

BoundInputs bound_inputs(const Experiment& experiment, double e_loss_zero);

/// Explicit stack for poly/lin readouts, general route for SM.
BoundReport primary_bound(const Experiment& experiment, const BoundInputs& inputs);

struct SweepRow {
  double value = 0.0;
  int n = 0;
  std::size_t m = 0;
  int k = 0;
  int r_max = 0;
  double epsilon = 0.0;
  double alpha_min = 0.0;
  std::size_t theta_size = 0;
  double l_h_bar_poly = 0.0;
  double l_h_bar_sm = 0.0;
  double rademacher_poly = 0.0;
  double rademacher_lin = 0.0;
  double rademacher_sm = 0.0;
  bool valid = false;
  std::optional<double> bound_total;
};

std::vector<SweepRow> sweep_table(const Experiment& experiment, double e_loss_zero);
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct RunOptions {
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<LogBase> log_base;
  bool override_guards = false;
};

/// Runs one subcommand and returns its exit code. Diagnostics go to `log`.
int run_command(const std::string& command, nlohmann::json config, const RunOptions& options, std::ostream& log);

/// Writes via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace qrc::cli
