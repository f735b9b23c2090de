#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ecplan/experiment/experiment.hpp"

using namespace ecplan;

namespace {

ExperimentConfig small_rocksample(const std::string& heuristic = "none") {
  auto c = ExperimentConfig::parse(
      "size = 5\nrocks = 3\nsimulations = 64\nparticles = 64\nmax_steps = 20\nepisodes = 3\nseed = 11\n");
  c.heuristic = heuristic;
  return c;
}

std::string rows_without_time(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    cells.erase(cells.begin() + 3);
    for (const auto& c : cells) out += c + ",";
    out += "\n";
  }
  return out;
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Config, Defaults) {
  const auto c = ExperimentConfig::parse("");
  EXPECT_EQ(c.domain, "rocksample");
  EXPECT_EQ(c.simulations, 1024);
  EXPECT_EQ(c.scenarios, 500);
  EXPECT_DOUBLE_EQ(c.epsilon, 0.01);
  EXPECT_EQ(c.theory_path(), "theories/rocksample_theory.lp");
}

TEST(Config, CommentsAndWhitespace) {
  const auto c = ExperimentConfig::parse("# head\n  episodes =  7   # trailing\n\nsolver=despot\n");
  EXPECT_EQ(c.episodes, 7);
  EXPECT_EQ(c.solver, "despot");
}

TEST(Config, Errors) {
  EXPECT_THROW((void)ExperimentConfig::parse("bogus = 1\n"), ConfigError);
  EXPECT_THROW((void)ExperimentConfig::parse("episodes = ten\n"), ConfigError);
  EXPECT_THROW((void)ExperimentConfig::parse("episodes = 3x\n"), ConfigError);
  EXPECT_THROW((void)ExperimentConfig::parse("episodes = -1\n"), ConfigError);
  EXPECT_THROW((void)ExperimentConfig::parse("episodes\n"), ConfigError);
  EXPECT_THROW((void)ExperimentConfig::parse("seed = 1\nseed = 2\n"), ConfigError);
  EXPECT_THROW((void)ExperimentConfig::parse("domain = chess\n"), ConfigError);
  EXPECT_THROW((void)ExperimentConfig::parse("heuristic = pref\n"), ConfigError);
  EXPECT_THROW((void)ExperimentConfig::parse("discount = 1\n"), ConfigError);
  EXPECT_THROW((void)ExperimentConfig::parse("theory = no/such/file.lp\n"), ConfigError);
  EXPECT_THROW((void)ExperimentConfig::load("/nonexistent/x.cfg"), ConfigError);
  EXPECT_NO_THROW((void)ExperimentConfig::parse("solver = despot\nheuristic = pref\n"));
}

TEST(Config, LoadResolvesShippedConfigs) {
  for (const char* name : {"rocksample_pomcp_timed.cfg", "pocman_despot_timed.cfg"}) {
    const auto c = ExperimentConfig::load(default_asset_dir() + "/configs/" + name);
    EXPECT_TRUE(std::filesystem::exists(c.resolve(c.theory_path()))) << name;
  }
}

TEST(Run, ZeroEpisodesHeaderOnly) {
  auto c = small_rocksample();
  c.episodes = 0;
  std::ostringstream csv;
  const auto results = run_experiment(c, {false, &csv});
  EXPECT_TRUE(results.empty());
  EXPECT_EQ(csv.str(), std::string(kCsvHeader) + "\n");
}

TEST(Run, DeterministicCsv) {
  for (const char* h : {"none", "timed"}) {
    std::ostringstream a, b;
    run_experiment(small_rocksample(h), {false, &a});
    run_experiment(small_rocksample(h), {false, &b});
    EXPECT_EQ(rows_without_time(a.str()), rows_without_time(b.str())) << h;
  }
}

TEST(Run, DespotDeterministic) {
  auto c = small_rocksample("timed");
  c.solver = "despot";
  c.scenarios = 10;
  c.trials = 5;
  c.max_depth = 15;
  std::ostringstream a, b;
  run_experiment(c, {false, &a});
  run_experiment(c, {false, &b});
  EXPECT_EQ(rows_without_time(a.str()), rows_without_time(b.str()));
}

TEST(Run, ParallelMatchesSerial) {
  auto c = small_rocksample("timed");
  c.episodes = 4;
  std::ostringstream serial, parallel;
  run_experiment(c, {false, &serial});
  c.parallel = 3;
  run_experiment(c, {false, &parallel});
  EXPECT_EQ(rows_without_time(serial.str()), rows_without_time(parallel.str()));
}

TEST(Run, SeedsPartition) {
  auto c = small_rocksample();
  const auto three = run_experiment(c);
  c.seed += 1;
  c.episodes = 2;
  const auto shifted = run_experiment(c);
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(shifted[i].record.seed, three[i + 1].record.seed);
    EXPECT_EQ(shifted[i].record.disc_return, three[i + 1].record.disc_return);
    EXPECT_EQ(shifted[i].record.steps, three[i + 1].record.steps);
  }
}

TEST(Run, ReturnMatchesRewards) {
  for (const char* h : {"none", "local", "timed"}) {
    for (const auto& r : run_experiment(small_rocksample(h))) {
      double expected = 0, scale = 1;
      for (double x : r.rewards) {
        expected += scale * x;
        scale *= 0.95;
      }
      EXPECT_NEAR(r.record.disc_return, expected, 1e-9);
      EXPECT_EQ(static_cast<std::size_t>(r.record.steps), r.rewards.size());
      EXPECT_GE(r.record.steps, 1);
      EXPECT_LE(r.record.gamma_calls, r.record.steps);
      EXPECT_GE(r.record.time_per_step_s, 0.0);
    }
  }
}

TEST(Run, LocalRefreshesEveryStep) {
  for (const auto& r : run_experiment(small_rocksample("local"))) EXPECT_EQ(r.record.gamma_calls, r.record.steps);
  for (const auto& r : run_experiment(small_rocksample("none"))) EXPECT_EQ(r.record.gamma_calls, 0);
}

TEST(Run, LongMacrosRefreshLessThanSteps) {
  // east persists for the whole window whatever the belief.
  const auto theory = temp_file("ecplan_always_east.lp", "init(east,t) :- t >= 0.\ncontd(east,t) :- t >= 0.\n");
  auto c = small_rocksample("timed");
  c.theory = theory.string();
  c.max_steps = 30;
  for (const auto& r : run_experiment(c)) {
    EXPECT_LT(r.record.gamma_calls, r.record.steps);
  }
  std::filesystem::remove(theory);
}

TEST(Run, PocmanTraces) {
  auto c = ExperimentConfig::parse(
      "domain = pocman\nsolver = despot\nheuristic = timed\nscenarios = 10\ntrials = 5\nmax_depth = 10\n"
      "particles = 50\nmax_steps = 8\nepisodes = 2\n");
  const auto results = run_experiment(c, {true, nullptr});
  for (const auto& r : results) {
    EXPECT_EQ(r.trace.steps.size(), static_cast<std::size_t>(r.record.steps));
    EXPECT_EQ(r.trace.discounted_return, r.record.disc_return);
    EXPECT_FALSE(r.trace.steps.front().features.empty());
  }
}

TEST(Csv, RowFormatAndRoundTrip) {
  EpisodeRecord r{2, 0.1, 7, 0.25, 3, 42};
  EXPECT_EQ(format_csv_row(r), "2,0.1,7,0.25,3,42");
  const auto path = temp_file("ecplan_rows.csv", std::string(kCsvHeader) + "\n" + format_csv_row(r) + "\n");
  const auto rows = read_csv(path.string());
  ASSERT_EQ(rows.size(), 1U);
  EXPECT_EQ(rows[0].disc_return, 0.1);
  EXPECT_EQ(rows[0].seed, 42U);
  std::filesystem::remove(path);
  const auto bad = temp_file("ecplan_bad.csv", "a,b\n");
  EXPECT_THROW((void)read_csv(bad.string()), IoError);
  std::filesystem::remove(bad);
}

TEST(Summary, MeanAndSampleStd) {
  const auto s = mean_std({10, 20});
  EXPECT_DOUBLE_EQ(s.mean, 15.0);
  EXPECT_NEAR(s.std, 7.0711, 1e-4);
  EXPECT_NEAR(s.stderr_, 5.0, 1e-12);
  EXPECT_EQ(mean_std({3.5}).std, 0.0);
}

TEST(Summary, Files) {
  std::string text = std::string(kCsvHeader) + "\n";
  text += format_csv_row({0, 10, 4, 0.5, 2, 1}) + "\n";
  text += format_csv_row({1, 20, 6, 1.5, 3, 2}) + "\n";
  const auto a = temp_file("ecplan_sa.csv", text), b = temp_file("ecplan_sb.csv", text);
  const auto rows = summarize({a.string(), b.string()});
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_EQ(rows[0].episodes, 2U);
  EXPECT_DOUBLE_EQ(rows[0].return_mean, 15.0);
  EXPECT_DOUBLE_EQ(rows[0].time_mean, 1.0);
  EXPECT_DOUBLE_EQ(rows[0].gamma_mean, 2.5);
  EXPECT_DOUBLE_EQ(rows[0].steps_mean, 5.0);
  EXPECT_EQ(rows[0].return_std, rows[1].return_std);
  EXPECT_EQ(rows[0].time_stderr, rows[1].time_stderr);
  const auto empty = temp_file("ecplan_se.csv", std::string(kCsvHeader) + "\n");
  EXPECT_THROW((void)summarize({empty.string()}), EmptyInput);
  EXPECT_THROW((void)summarize({}), EmptyInput);
  for (const auto& p : {a, b, empty}) std::filesystem::remove(p);
}
