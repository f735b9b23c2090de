#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecplan/logic/program.hpp"
#include "ecplan/logic/value.hpp"

namespace ecplan {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TraceStep {
  logic::AtomSet features;
  int action = 0;
  double reward = 0.0;
};

struct Trace {
  std::vector<TraceStep> steps;
  double discounted_return = 0.0;
  std::uint64_t seed = 0;
};

/// Traces whose return is strictly above the mean return.
std::vector<Trace> select_traces(const std::vector<Trace>& traces);

struct Cdpi {
  std::string id;
  logic::AtomSet inclusions;
  logic::AtomSet exclusions;
  logic::AtomSet context;
  friend bool operator==(const Cdpi&, const Cdpi&) = default;
};

/// One init CDPI at the start of every constant-action run longer than one
/// step and a contd CDPI for each later step of the run. `action_atoms[a]` is
/// the atom of action a; actions without one are skipped and never excluded.
std::vector<Cdpi> emit_cdpis(const Trace& trace, const std::vector<std::optional<logic::GroundAtom>>& action_atoms,
                             const std::string& id_prefix = "e");

/// `#pos(id, {inc}, {exc}, {ctx}).` records, atoms sorted by text. Context
/// atoms are written as facts.
std::string format_ilasp(const std::vector<Cdpi>& cdpis);
void export_ilasp(const std::vector<Cdpi>& cdpis, const std::string& path);
std::vector<Cdpi> parse_ilasp(const std::string& text);
std::vector<Cdpi> load_ilasp(const std::string& path);

/// Fraction of `cdpis` covered by prelude + hypothesis: evaluated on the
/// context at t = 1, every inclusion is derived and no exclusion is. Heads
/// are read as head(X) -> head(X, 1). An empty list gives 1.0.
double check_coverage(const logic::Program& hypothesis, const logic::Program& prelude,
                      const std::vector<Cdpi>& cdpis);

/// CDPIs whose inclusion names `action_atom` (under init or contd).
std::vector<Cdpi> cdpis_for(const std::vector<Cdpi>& cdpis, const logic::GroundAtom& action_atom);

/// Line-delimited archive: one JSON object per step with the trace index,
/// step index, feature atoms, action and reward, plus one summary line per
/// trace with its return and seed.
void write_trace_archive(const std::vector<Trace>& traces, std::ostream& out);
std::vector<Trace> read_trace_archive(std::istream& in);

}  // namespace ecplan
