// ecplan: experiment runner for the macro-action POMDP planners.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "ecplan/domains/rocksample.hpp"
#include "ecplan/experiment/experiment.hpp"
#include "ecplan/logic/errors.hpp"
#include "ecplan/logic/parser.hpp"
#include "ecplan/traces/traces.hpp"

using namespace ecplan;

namespace {

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> episodes;
  std::optional<int> parallel;
};

void add_common(CLI::App* cmd, Common& c, bool out_required) {
  cmd->add_option("--config", c.config, "Experiment config (key = value)")->required()->check(CLI::ExistingFile);
  auto* out = cmd->add_option("--out", c.out, "Output file");
  if (out_required) out->required();
  cmd->add_option("--seed", c.seed, "Base seed; episode i uses seed + i");
  cmd->add_option("--episodes", c.episodes, "Episode count");
  cmd->add_option("--parallel", c.parallel, "Worker threads");
}

ExperimentConfig load(const Common& c) {
  auto config = ExperimentConfig::load(c.config);
  if (c.seed) config.seed = *c.seed;
  if (c.episodes) config.episodes = *c.episodes;
  if (c.parallel) config.parallel = *c.parallel;
  config.validate();
  return config;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

int cmd_run(const Common& c) {
  const auto config = load(c);
  RunOptions options;
  std::ofstream file;
  if (!c.out.empty()) {
    file = open_out(c.out);
    options.csv = &file;
  } else {
    options.csv = &std::cout;
  }
  const auto results = run_experiment(config, options);
  std::vector<EpisodeRecord> records;
  for (const auto& r : results) records.push_back(r.record);
  if (!records.empty() && !c.out.empty()) std::cout << format_summary_table({summarize_records(c.out, records)});
  return 0;
}

int cmd_gen_traces(const Common& c) {
  const auto config = load(c);
  RunOptions options;
  options.record_traces = true;
  const auto results = run_experiment(config, options);
  std::vector<Trace> traces;
  for (const auto& r : results) traces.push_back(r.trace);
  auto out = open_out(c.out);
  write_trace_archive(traces, out);
  std::cout << "wrote " << traces.size() << " traces to " << c.out << '\n';
  return 0;
}

int cmd_export_cdpi(const Common& c, const std::string& traces_path) {
  const auto config = load(c);
  std::ifstream in(traces_path);
  if (!in) throw IoError("cannot read " + traces_path);
  const auto traces = read_trace_archive(in);
  const auto selected = select_traces(traces);
  const auto atoms = action_atoms(config);
  std::vector<Cdpi> cdpis;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    auto part = emit_cdpis(selected[i], atoms, "t" + std::to_string(i) + "_");
    cdpis.insert(cdpis.end(), part.begin(), part.end());
  }
  export_ilasp(cdpis, c.out);
  std::cout << "selected " << selected.size() << " of " << traces.size() << " traces, " << cdpis.size()
            << " CDPIs\n";
  const auto prelude = logic::load_program(config.resolve(config.prelude));
  const auto theory = logic::load_program(config.resolve(config.theory_path()));
  for (const auto& atom : atoms) {
    if (!atom) continue;
    const auto mine = cdpis_for(cdpis, *atom);
    std::printf("coverage %-12s %6.3f  (%zu CDPIs)\n", atom->str().c_str(), check_coverage(theory, prelude, mine),
                mine.size());
  }
  return 0;
}

int cmd_ground_macros(const Common& c, const std::string& features, int max_length) {
  auto config = load(c);
  const auto gamma = make_macro_generator(config, max_length > 0 ? max_length : config.macro_max_length);
  const auto macros = gamma.compute(logic::parse_ground_atoms(features));
  for (const auto& m : macros) std::cout << action_name(config, m.action) << ' ' << m.length << '\n';
  return 0;
}

int cmd_summarize(const std::vector<std::string>& files, const std::string& out) {
  const auto rows = summarize(files);
  if (!out.empty()) {
    auto file = open_out(out);
    file << format_summary_csv(rows);
  }
  std::cout << format_summary_table(rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ecplan: online POMDP planning with macro-action heuristics"};
  app.require_subcommand(1);

  Common run_opts, trace_opts, cdpi_opts, macro_opts;
  auto* run = app.add_subcommand("run", "Run episodes and write one CSV row per episode");
  add_common(run, run_opts, false);

  auto* gen = app.add_subcommand("gen-traces", "Run episodes and archive their traces as JSON lines");
  add_common(gen, trace_opts, true);

  std::string traces_path;
  auto* cdpi = app.add_subcommand("export-cdpi", "Select good traces, write CDPIs and report coverage");
  add_common(cdpi, cdpi_opts, true);
  cdpi->add_option("--traces", traces_path, "Trace archive from gen-traces")->required()->check(CLI::ExistingFile);

  std::string features;
  int max_length = 0;
  auto* macros = app.add_subcommand("ground-macros", "Print the macro length of every action for a feature set");
  add_common(macros, macro_opts, false);
  macros->add_option("--features", features, "Ground feature atoms, e.g. \"dist(2,2) guess(2,80)\"")->required();
  macros->add_option("--max-length", max_length, "Macro length bound (default from config)");

  std::vector<std::string> files;
  std::string summary_out;
  auto* summary = app.add_subcommand("summarize", "Mean, std and standard error for result CSVs");
  summary->add_option("files", files, "Result CSV files")->required()->check(CLI::ExistingFile);
  summary->add_option("--out", summary_out, "Summary CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(run_opts);
    if (*gen) return cmd_gen_traces(trace_opts);
    if (*cdpi) return cmd_export_cdpi(cdpi_opts, traces_path);
    if (*macros) return cmd_ground_macros(macro_opts, features, max_length);
    if (*summary) return cmd_summarize(files, summary_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
