#include "ecplan/experiment/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "ecplan/domains/pocman.hpp"
#include "ecplan/domains/rocksample.hpp"
#include "ecplan/logic/parser.hpp"
#include "ecplan/solvers/despot.hpp"
#include "ecplan/solvers/pomcp.hpp"
#include "ecplan/solvers/pref_policies.hpp"

#ifndef ECPLAN_DEFAULT_ASSET_DIR
#define ECPLAN_DEFAULT_ASSET_DIR "assets"
#endif

namespace ecplan {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw ConfigError("bad value for " + key + ": '" + text + "'");
  return value;
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(number) + ": empty key");
    if (!out.emplace(key, value).second) throw ConfigError("duplicate key " + key);
  }
  return out;
}

ExperimentConfig ExperimentConfig::parse(const std::string& text, const std::string& base) {
  ExperimentConfig c;
  c.base_dir = base;
  for (const auto& [key, value] : parse_key_values(text)) {
    auto str = [&](std::string& field) { field = value; };
    auto integer = [&](int& field) { field = parse_number<int>(key, value); };
    auto u64 = [&](std::uint64_t& field) { field = parse_number<std::uint64_t>(key, value); };
    auto real = [&](double& field) { field = parse_number<double>(key, value); };
    if (key == "domain") str(c.domain);
    else if (key == "size") integer(c.size);
    else if (key == "rocks") integer(c.rocks);
    else if (key == "layout_seed") u64(c.layout_seed);
    else if (key == "maze") str(c.maze);
    else if (key == "ghosts") integer(c.ghosts);
    else if (key == "food_prob") real(c.food_prob);
    else if (key == "chase_prob") real(c.chase_prob);
    else if (key == "discount") real(c.discount);
    else if (key == "solver") str(c.solver);
    else if (key == "heuristic") str(c.heuristic);
    else if (key == "particles") integer(c.particles);
    else if (key == "max_steps") integer(c.max_steps);
    else if (key == "episodes") integer(c.episodes);
    else if (key == "seed") u64(c.seed);
    else if (key == "parallel") integer(c.parallel);
    else if (key == "simulations") integer(c.simulations);
    else if (key == "exploration") real(c.exploration);
    else if (key == "max_depth") integer(c.max_depth);
    else if (key == "n_max") integer(c.n_max);
    else if (key == "scenarios") integer(c.scenarios);
    else if (key == "epsilon") real(c.epsilon);
    else if (key == "xi") real(c.xi);
    else if (key == "trials") integer(c.trials);
    else if (key == "upper_bound") str(c.upper_bound);
    else if (key == "mdp_depth") integer(c.mdp_depth);
    else if (key == "macro_max_length") integer(c.macro_max_length);
    else if (key == "prelude") str(c.prelude);
    else if (key == "theory") str(c.theory);
    else if (key == "transitions") str(c.transitions);
    else if (key == "coverage") str(c.coverage);
    else if (key == "asset_dir") str(c.asset_dir);
    else throw ConfigError("unknown key " + key);
  }
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot read config " + path);
  std::stringstream ss;
  ss << file.rdbuf();
  return parse(ss.str(), fs::path(path).parent_path().string());
}

void ExperimentConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  require(domain == "rocksample" || domain == "pocman", "domain must be rocksample or pocman");
  require(solver == "pomcp" || solver == "despot", "solver must be pomcp or despot");
  require(heuristic == "none" || heuristic == "pref" || heuristic == "local" || heuristic == "timed",
          "heuristic must be none, pref, local or timed");
  require(!(solver == "pomcp" && heuristic == "pref"), "heuristic pref is a despot lower bound");
  require(upper_bound == "mdp" || upper_bound == "trivial", "upper_bound must be mdp or trivial");
  require(size >= 1 && rocks >= 0 && rocks <= 30 && rocks < size * size, "rocksample size/rocks out of range");
  require(ghosts >= 0 && ghosts <= kMaxGhosts, "ghosts must be in 0..4");
  require(food_prob >= 0 && food_prob <= 1 && chase_prob >= 0 && chase_prob <= 1, "probabilities must be in [0,1]");
  require(discount >= 0 && discount < 1, "discount must be in [0,1)");
  require(particles >= 1, "particles must be >= 1");
  require(max_steps >= 1, "max_steps must be >= 1");
  require(episodes >= 0, "episodes must be >= 0");
  require(parallel >= 1, "parallel must be >= 1");
  require(simulations >= 1 && exploration >= 0 && max_depth >= 1 && n_max >= 0, "pomcp parameters out of range");
  require(scenarios >= 1 && epsilon > 0 && trials >= 0 && mdp_depth >= 0 && xi >= 0 && xi <= 1,
          "despot parameters out of range");
  require(macro_max_length >= 1, "macro_max_length must be >= 1");
  for (const auto& p : {prelude, theory_path(), transitions_path(), coverage_path()})
    require(fs::exists(resolve(p)), "missing asset " + p);
  if (domain == "pocman") require(fs::exists(resolve(maze)), "missing maze " + maze);
}

std::string default_asset_dir() {
  if (const char* env = std::getenv("ECPLAN_ASSETS")) return env;
  return ECPLAN_DEFAULT_ASSET_DIR;
}

std::string ExperimentConfig::resolve(const std::string& path) const {
  const fs::path p(path);
  if (p.is_absolute()) return path;
  if (!base_dir.empty() && fs::exists(fs::path(base_dir) / p)) return (fs::path(base_dir) / p).string();
  const std::string assets = asset_dir.empty() ? default_asset_dir() : resolve(asset_dir);
  return (fs::path(assets) / p).string();
}

std::string ExperimentConfig::theory_path() const {
  if (!theory.empty()) return theory;
  return domain == "pocman" ? "theories/pocman_theory.lp" : "theories/rocksample_theory.lp";
}
std::string ExperimentConfig::transitions_path() const {
  if (!transitions.empty()) return transitions;
  return domain == "pocman" ? "theories/pocman_transitions.lp" : "theories/rocksample_transitions.lp";
}
std::string ExperimentConfig::coverage_path() const {
  if (!coverage.empty()) return coverage;
  return domain == "pocman" ? "theories/pocman_coverage.cfg" : "theories/rocksample_coverage.cfg";
}

namespace {

struct RocksampleDomain {
  using Model = Rocksample;
  explicit RocksampleDomain(const ExperimentConfig& c) : model(c.size, c.rocks, c.layout_seed, c.discount) {}
  Rocksample model;
  [[nodiscard]] logic::AtomSet features(const ParticleBelief<RocksampleState>& b) const {
    return featurize_rocksample(b, model);
  }
  [[nodiscard]] logic::AtomSet background() const { return {}; }
  [[nodiscard]] std::vector<std::optional<logic::GroundAtom>> atoms() const {
    std::vector<std::optional<logic::GroundAtom>> out(static_cast<std::size_t>(model.action_count()));
    for (int d = 0; d < 4; ++d) out[static_cast<std::size_t>(d)] = logic::GroundAtom(direction_name(d));
    return out;
  }
  [[nodiscard]] std::unique_ptr<RolloutPolicy<RocksampleState>> pref() const {
    return std::make_unique<RocksamplePref>(model);
  }
};

struct PocmanDomain {
  using Model = Pocman;
  PocmanDomain(const ExperimentConfig& c)
      : model(Maze::load(c.resolve(c.maze)), PocmanParams{c.ghosts, c.food_prob, c.chase_prob, c.discount}) {}
  Pocman model;
  [[nodiscard]] logic::AtomSet features(const ParticleBelief<PocmanState>& b) const {
    return featurize_pocman(b, model.maze(), b[0].pocman, model.params().ghosts);
  }
  [[nodiscard]] logic::AtomSet background() const { return pocman_background(model.maze()); }
  [[nodiscard]] std::vector<std::optional<logic::GroundAtom>> atoms() const {
    std::vector<std::optional<logic::GroundAtom>> out;
    for (int d = 0; d < 4; ++d) out.emplace_back(pocman_action_atom(d));
    return out;
  }
  [[nodiscard]] std::unique_ptr<RolloutPolicy<PocmanState>> pref() const { return std::make_unique<PocmanPref>(model); }
};

int direction_of(const std::string& name) {
  for (int d = 0; d < 4; ++d)
    if (name == direction_name(d)) return d;
  throw ConfigError("unknown action in coverage table: " + name);
}

template <class Domain>
MacroGenerator generator_for(const ExperimentConfig& c, const Domain& domain, int max_length) {
  return MacroGenerator(logic::load_program(c.resolve(c.prelude)), Hypothesis(logic::load_program(c.resolve(c.theory_path()))),
                        TransitionAxioms(logic::load_program(c.resolve(c.transitions_path()))), domain.background(),
                        domain.atoms(), max_length);
}

template <class Domain>
struct Runner {
  using Model = typename Domain::Model;
  using State = typename Model::State;

  const ExperimentConfig& config;
  const Domain& domain;
  const std::optional<MacroGenerator>& gamma;
  const CoverageTable& coverage;
  const std::unique_ptr<RolloutPolicy<State>>& pref;

  EpisodeResult run(int episode, bool record_traces) const {
    const Model& model = domain.model;
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(episode);
    Rng env_rng(mix_seed(seed, 1)), plan_rng(mix_seed(seed, 2)), belief_rng(mix_seed(seed, 3));
    EpisodeResult result;
    result.record.episode = episode;
    result.record.seed = seed;
    result.trace.seed = seed;

    State state = model.sample_initial_state(env_rng);
    auto belief = sample_initial_belief(model, static_cast<std::size_t>(config.particles), belief_rng);
    MacroSchedule schedule;
    const bool uses_gamma = gamma.has_value();
    double planning = 0.0;

    PomcpConfig pc{config.simulations, config.exploration, config.discount, config.max_depth, config.n_max,
                   config.heuristic == "timed" || config.heuristic == "local"};
    DespotConfig dc;
    dc.scenarios = config.scenarios;
    dc.epsilon = config.epsilon;
    dc.xi = config.xi;
    dc.max_depth = config.max_depth;
    dc.trials = config.trials;
    dc.mdp_depth = config.mdp_depth;
    dc.upper = config.upper_bound == "trivial" ? UpperBoundKind::kTrivial : UpperBoundKind::kMdp;
    dc.lower = config.heuristic == "timed"   ? LowerBoundKind::kTimed
               : config.heuristic == "local" ? LowerBoundKind::kLocal
               : config.heuristic == "pref"  ? LowerBoundKind::kPref
                                             : LowerBoundKind::kTrivial;

    for (int step = 0; step < config.max_steps; ++step) {
      const auto start = std::chrono::steady_clock::now();
      if (uses_gamma && schedule.exhausted()) {
        schedule.refresh(gamma->compute_macro_set(belief, [&](const auto& b) { return domain.features(b); }));
        ++result.record.gamma_calls;
      }
      int action;
      if (config.solver == "pomcp") {
        const PomcpHeuristic h{uses_gamma ? &schedule.macros() : nullptr, schedule.t(), &coverage};
        Pomcp<Model> pomcp(model, pc);
        action = pomcp.search(belief, plan_rng, &h);
      } else {
        const LowerBoundInputs<State> in{uses_gamma ? &schedule.macros() : nullptr, schedule.t(), pref.get()};
        Despot<Model> despot(model, dc, in);
        const auto r = despot.search(belief, plan_rng);
        action = r.action;
        result.bound_violations += r.stats.bound_violations;
        result.nodes_expanded += r.stats.expanded;
        if (step == 0) result.first_used_default = r.stats.used_default;
      }
      planning += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (step == 0) result.first_action = action;

      if (record_traces) result.trace.steps.push_back({domain.features(belief), action, 0.0});
      auto out = model.step(state, action, env_rng);
      result.rewards.push_back(out.reward);
      if (record_traces) result.trace.steps.back().reward = out.reward;
      ++result.record.steps;
      if (out.terminal) break;
      try {
        belief = belief_update(belief, action, out.observation, model, belief_rng);
      } catch (const BeliefCollapse&) {
        ++result.belief_collapses;
        std::vector<State> particles;
        for (int i = 0; i < config.particles; ++i) particles.push_back(model.observable_prior(out.next_state, belief_rng));
        belief = ParticleBelief<State>(std::move(particles), static_cast<std::size_t>(config.particles));
      }
      schedule.advance();
      state = std::move(out.next_state);
    }
    result.record.disc_return = discounted_return(result.rewards, config.discount);
    result.trace.discounted_return = result.record.disc_return;
    result.record.time_per_step_s = planning / result.record.steps;
    return result;
  }
};

template <class Domain>
std::vector<EpisodeResult> run_domain(const ExperimentConfig& config, const RunOptions& options) {
  const Domain domain(config);
  std::optional<MacroGenerator> gamma;
  if (config.heuristic == "timed") gamma.emplace(generator_for(config, domain, config.macro_max_length));
  if (config.heuristic == "local") gamma.emplace(generator_for(config, domain, 1));
  const CoverageTable coverage = CoverageTable::load(config.resolve(config.coverage_path()),
                                                     domain.model.action_count(), direction_of);
  const std::unique_ptr<RolloutPolicy<typename Domain::Model::State>> pref = domain.pref();
  const Runner<Domain> runner{config, domain, gamma, coverage, pref};

  if (options.csv) *options.csv << kCsvHeader << '\n' << std::flush;
  const auto n = static_cast<std::size_t>(config.episodes);
  std::vector<std::optional<EpisodeResult>> results(n);
  std::mutex mutex;
  std::condition_variable ready;
  std::size_t next = 0;
  std::exception_ptr failure;

  auto worker = [&] {
    while (true) {
      std::size_t i;
      {
        std::lock_guard lock(mutex);
        if (next >= n || failure) return;
        i = next++;
      }
      try {
        auto r = runner.run(static_cast<int>(i), options.record_traces);
        std::lock_guard lock(mutex);
        results[i] = std::move(r);
      } catch (...) {
        std::lock_guard lock(mutex);
        failure = std::current_exception();
      }
      ready.notify_all();
    }
  };

  std::vector<std::thread> pool;
  const int threads = std::min<int>(config.parallel, static_cast<int>(std::max<std::size_t>(n, 1)));
  if (threads > 1)
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  else
    worker();
  for (std::size_t i = 0; i < n; ++i) {
    std::unique_lock lock(mutex);
    ready.wait(lock, [&] { return results[i].has_value() || failure; });
    if (failure) break;
    if (options.csv) *options.csv << format_csv_row(results[i]->record) << '\n' << std::flush;
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  std::vector<EpisodeResult> out;
  out.reserve(n);
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

}  // namespace

std::vector<EpisodeResult> run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  if (config.domain == "pocman") return run_domain<PocmanDomain>(config, options);
  return run_domain<RocksampleDomain>(config, options);
}

std::vector<std::optional<logic::GroundAtom>> action_atoms(const ExperimentConfig& config) {
  if (config.domain == "pocman") return PocmanDomain(config).atoms();
  return RocksampleDomain(config).atoms();
}

int action_count(const ExperimentConfig& config) {
  if (config.domain == "pocman") return 4;
  return Rocksample::kFirstCheck + config.rocks;
}

std::string action_name(const ExperimentConfig& config, int action) {
  if (config.domain == "pocman") return direction_name(action);
  if (action < Rocksample::kSample) return direction_name(action);
  if (action == Rocksample::kSample) return "sample";
  return "check(" + std::to_string(action - Rocksample::kFirstCheck) + ")";
}

MacroGenerator make_macro_generator(const ExperimentConfig& config, int max_length) {
  if (config.domain == "pocman") return generator_for(config, PocmanDomain(config), max_length);
  return generator_for(config, RocksampleDomain(config), max_length);
}

CoverageTable load_coverage(const ExperimentConfig& config) {
  return CoverageTable::load(config.resolve(config.coverage_path()), action_count(config), direction_of);
}

std::string format_csv_row(const EpisodeRecord& r) {
  std::ostringstream out;
  out << r.episode << ',' << format_double(r.disc_return) << ',' << r.steps << ',' << format_double(r.time_per_step_s)
      << ',' << r.gamma_calls << ',' << r.seed;
  return out.str();
}

std::vector<EpisodeRecord> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) throw IoError(path + ": unexpected CSV header");
  std::vector<EpisodeRecord> out;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(trim(line));
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) throw IoError(path + ": malformed row '" + line + "'");
    try {
      EpisodeRecord r;
      r.episode = parse_number<int>("episode", cells[0]);
      r.disc_return = parse_number<double>("disc_return", cells[1]);
      r.steps = parse_number<int>("steps", cells[2]);
      r.time_per_step_s = parse_number<double>("time_per_step_s", cells[3]);
      r.gamma_calls = parse_number<int>("gamma_calls", cells[4]);
      r.seed = parse_number<std::uint64_t>("seed", cells[5]);
      out.push_back(r);
    } catch (const ConfigError& e) {
      throw IoError(path + ": " + e.what());
    }
  }
  return out;
}

MeanStd mean_std(const std::vector<double>& values) {
  MeanStd out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  for (double v : values) out.mean += v;
  out.mean /= n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / (n - 1));
  }
  out.stderr_ = out.std / std::sqrt(n);
  return out;
}

Summary summarize_records(const std::string& name, const std::vector<EpisodeRecord>& records) {
  if (records.empty()) throw EmptyInput(name + ": no episodes");
  std::vector<double> returns, times;
  Summary s;
  s.file = name;
  s.episodes = records.size();
  for (const auto& r : records) {
    returns.push_back(r.disc_return);
    times.push_back(r.time_per_step_s);
    s.gamma_mean += r.gamma_calls;
    s.steps_mean += r.steps;
  }
  s.gamma_mean /= static_cast<double>(records.size());
  s.steps_mean /= static_cast<double>(records.size());
  const auto ret = mean_std(returns), t = mean_std(times);
  s.return_mean = ret.mean;
  s.return_std = ret.std;
  s.return_stderr = ret.stderr_;
  s.time_mean = t.mean;
  s.time_std = t.std;
  s.time_stderr = t.stderr_;
  return s;
}

std::vector<Summary> summarize(const std::vector<std::string>& paths) {
  if (paths.empty()) throw EmptyInput("no input files");
  std::vector<Summary> out;
  for (const auto& p : paths) out.push_back(summarize_records(p, read_csv(p)));
  return out;
}

std::string format_summary_csv(const std::vector<Summary>& rows) {
  std::ostringstream out;
  out << "file,episodes,return_mean,return_std,return_stderr,time_mean_s,time_std_s,time_stderr_s,gamma_calls_mean,"
         "steps_mean\n";
  for (const auto& s : rows)
    out << s.file << ',' << s.episodes << ',' << format_double(s.return_mean) << ',' << format_double(s.return_std)
        << ',' << format_double(s.return_stderr) << ',' << format_double(s.time_mean) << ','
        << format_double(s.time_std) << ',' << format_double(s.time_stderr) << ',' << format_double(s.gamma_mean)
        << ',' << format_double(s.steps_mean) << '\n';
  return out.str();
}

std::string format_summary_table(const std::vector<Summary>& rows) {
  std::size_t width = 4;
  for (const auto& s : rows) width = std::max(width, s.file.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width)) << "file" << std::right << std::setw(6) << "n"
      << std::setw(12) << "return" << std::setw(10) << "std" << std::setw(10) << "stderr" << std::setw(12)
      << "time/step" << std::setw(10) << "gamma" << std::setw(9) << "steps" << '\n';
  out << std::fixed;
  for (const auto& s : rows) {
    out << std::left << std::setw(static_cast<int>(width)) << s.file << std::right << std::setw(6) << s.episodes
        << std::setprecision(3) << std::setw(12) << s.return_mean << std::setw(10) << s.return_std << std::setw(10)
        << s.return_stderr << std::setprecision(5) << std::setw(12) << s.time_mean << std::setprecision(1)
        << std::setw(10) << s.gamma_mean << std::setw(9) << s.steps_mean << '\n';
  }
  return out.str();
}

}  // namespace ecplan
