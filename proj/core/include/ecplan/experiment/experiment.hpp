#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecplan/logic/value.hpp"
#include "ecplan/macro/macro.hpp"
#include "ecplan/traces/traces.hpp"

namespace ecplan {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EmptyInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed `key = value` lines; `#` starts a comment. Duplicate keys throw.
std::map<std::string, std::string> parse_key_values(const std::string& text);

struct ExperimentConfig {
  std::string domain = "rocksample";  // rocksample | pocman
  // rocksample
  int size = 12;
  int rocks = 8;
  std::uint64_t layout_seed = 1;
  // pocman
  std::string maze = "mazes/maze_10x10.txt";
  int ghosts = 2;
  double food_prob = 0.5;
  double chase_prob = 0.75;

  double discount = 0.95;
  std::string solver = "pomcp";    // pomcp | despot
  std::string heuristic = "none";  // none | pref | local | timed
  int particles = 1000;
  int max_steps = 100;
  int episodes = 10;
  std::uint64_t seed = 0;
  int parallel = 1;

  // pomcp
  int simulations = 1024;
  double exploration = 1.0;
  int max_depth = 40;
  int n_max = 10;
  // despot
  int scenarios = 500;
  double epsilon = 0.01;
  double xi = 0.95;
  int trials = 100;
  std::string upper_bound = "mdp";  // mdp | trivial
  int mdp_depth = 1;

  int macro_max_length = 10;
  std::string prelude = "theories/prelude.lp";
  std::string theory;       // domain default when empty
  std::string transitions;  // domain default when empty
  std::string coverage;     // domain default when empty
  std::string asset_dir;    // default: ECPLAN_ASSETS, then the build-time asset dir

  /// Throws ConfigError on unknown keys, malformed or out-of-range values.
  static ExperimentConfig parse(const std::string& text, const std::string& base_dir = {});
  static ExperimentConfig load(const std::string& path);
  void validate() const;

  /// Resolves an asset path: absolute, relative to the config file, then
  /// relative to the asset directory.
  [[nodiscard]] std::string resolve(const std::string& path) const;
  [[nodiscard]] std::string theory_path() const;
  [[nodiscard]] std::string transitions_path() const;
  [[nodiscard]] std::string coverage_path() const;

  std::string base_dir;
};

/// Asset directory used when a config does not name one.
std::string default_asset_dir();

struct EpisodeRecord {
  int episode = 0;
  double disc_return = 0.0;
  int steps = 0;
  double time_per_step_s = 0.0;
  int gamma_calls = 0;
  std::uint64_t seed = 0;
};

struct EpisodeResult {
  EpisodeRecord record;
  std::vector<double> rewards;
  Trace trace;  // filled when tracing is on
  std::size_t bound_violations = 0;
  std::size_t nodes_expanded = 0;
  int first_action = -1;
  bool first_used_default = false;
  int belief_collapses = 0;
};

struct RunOptions {
  bool record_traces = false;
  std::ostream* csv = nullptr;  // header plus one flushed row per episode
};

std::vector<EpisodeResult> run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

inline constexpr const char* kCsvHeader = "episode,disc_return,steps,time_per_step_s,gamma_calls,seed";
std::string format_csv_row(const EpisodeRecord& record);
std::vector<EpisodeRecord> read_csv(const std::string& path);

/// Action atoms used by Γ and the CDPI scheme: movement actions only.
std::vector<std::optional<logic::GroundAtom>> action_atoms(const ExperimentConfig& config);
int action_count(const ExperimentConfig& config);
std::string action_name(const ExperimentConfig& config, int action);
MacroGenerator make_macro_generator(const ExperimentConfig& config, int max_length);
CoverageTable load_coverage(const ExperimentConfig& config);

struct Summary {
  std::string file;
  std::size_t episodes = 0;
  double return_mean = 0, return_std = 0, return_stderr = 0;
  double time_mean = 0, time_std = 0, time_stderr = 0;
  double gamma_mean = 0, steps_mean = 0;
};

struct MeanStd {
  double mean = 0, std = 0, stderr_ = 0;
};

/// Mean, sample standard deviation (0 for one value) and standard error.
MeanStd mean_std(const std::vector<double>& values);

Summary summarize_records(const std::string& name, const std::vector<EpisodeRecord>& records);
/// Throws EmptyInput when a file has no rows.
std::vector<Summary> summarize(const std::vector<std::string>& paths);
std::string format_summary_csv(const std::vector<Summary>& rows);
std::string format_summary_table(const std::vector<Summary>& rows);

}  // namespace ecplan
