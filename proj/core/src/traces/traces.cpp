#include "ecplan/traces/traces.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ecplan/logic/errors.hpp"
#include "ecplan/logic/evaluator.hpp"
#include "ecplan/logic/parser.hpp"
#include "ecplan/macro/macro.hpp"

namespace ecplan {

using logic::AtomSet;
using logic::GroundAtom;

std::vector<Trace> select_traces(const std::vector<Trace>& traces) {
  if (traces.empty()) return {};
  double mean = 0.0;
  for (const auto& t : traces) mean += t.discounted_return;
  mean /= static_cast<double>(traces.size());
  std::vector<Trace> out;
  for (const auto& t : traces)
    if (t.discounted_return > mean) out.push_back(t);
  return out;
}

namespace {

GroundAtom wrap(const std::string& head, const GroundAtom& atom) {
  return GroundAtom(head, {logic::Value::function(atom.predicate, atom.args)});
}

std::vector<std::string> sorted_text(const AtomSet& atoms) {
  std::vector<std::string> out;
  for (const auto& a : atoms) out.push_back(a.str());
  std::sort(out.begin(), out.end());
  return out;
}

std::string join(const std::vector<std::string>& items, const std::string& sep, const std::string& tail = "") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i] + tail;
  }
  return out;
}

}  // namespace

std::vector<Cdpi> emit_cdpis(const Trace& trace, const std::vector<std::optional<GroundAtom>>& action_atoms,
                             const std::string& id_prefix) {
  std::vector<Cdpi> out;
  const auto& steps = trace.steps;
  auto atom_of = [&](int a) -> const std::optional<GroundAtom>& {
    static const std::optional<GroundAtom> none;
    if (a < 0 || a >= static_cast<int>(action_atoms.size())) return none;
    return action_atoms[static_cast<std::size_t>(a)];
  };
  std::size_t start = 0;
  while (start < steps.size()) {
    std::size_t end = start + 1;
    while (end < steps.size() && steps[end].action == steps[start].action) ++end;
    const int action = steps[start].action;
    if (end - start > 1 && atom_of(action)) {
      for (std::size_t i = start; i < end; ++i) {
        const std::string head = i == start ? "init" : "contd";
        Cdpi c;
        c.id = id_prefix + std::to_string(i);
        c.inclusions.insert(wrap(head, *atom_of(action)));
        for (int b = 0; b < static_cast<int>(action_atoms.size()); ++b)
          if (b != action && atom_of(b)) c.exclusions.insert(wrap(head, *atom_of(b)));
        c.context = steps[i].features;
        out.push_back(std::move(c));
      }
    }
    start = end;
  }
  return out;
}

std::string format_ilasp(const std::vector<Cdpi>& cdpis) {
  std::string out;
  for (const auto& c : cdpis) {
    out += "#pos(" + c.id + ", {" + join(sorted_text(c.inclusions), ", ") + "}, {" +
           join(sorted_text(c.exclusions), ", ") + "}, {" + join(sorted_text(c.context), " ", ".") + "}).\n";
  }
  return out;
}

void export_ilasp(const std::vector<Cdpi>& cdpis, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write " + path);
  file << format_ilasp(cdpis);
  if (!file) throw IoError("write failed: " + path);
}

std::vector<Cdpi> parse_ilasp(const std::string& text) {
  std::vector<Cdpi> out;
  std::size_t pos = 0;
  auto fail = [](const std::string& why) { throw logic::ParseError(0, 0, why); };
  auto group = [&](std::size_t& p) {
    const std::size_t open = text.find('{', p);
    if (open == std::string::npos) fail("missing '{' in #pos record");
    const std::size_t close = text.find('}', open);
    if (close == std::string::npos) fail("missing '}' in #pos record");
    p = close + 1;
    return logic::parse_ground_atoms(std::string_view(text).substr(open + 1, close - open - 1));
  };
  while ((pos = text.find("#pos(", pos)) != std::string::npos) {
    pos += 5;
    const std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) fail("missing id in #pos record");
    Cdpi c;
    c.id = text.substr(pos, comma - pos);
    c.id.erase(0, c.id.find_first_not_of(" \t"));
    c.id.erase(c.id.find_last_not_of(" \t") + 1);
    pos = comma;
    c.inclusions = group(pos);
    c.exclusions = group(pos);
    c.context = group(pos);
    const std::size_t end = text.find(").", pos);
    if (end == std::string::npos) fail("unterminated #pos record");
    pos = end + 2;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Cdpi> load_ilasp(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << file.rdbuf();
  return parse_ilasp(ss.str());
}

double check_coverage(const logic::Program& hypothesis, const logic::Program& prelude,
                      const std::vector<Cdpi>& cdpis) {
  if (cdpis.empty()) return 1.0;
  logic::Program program = prelude;
  program.merge(hypothesis);
  const logic::Evaluator evaluator(program);
  std::size_t covered = 0;
  for (const auto& c : cdpis) {
    const AtomSet model = evaluator.run(c.context, 1);
    bool ok = true;
    for (const auto& a : c.inclusions) ok = ok && model.contains(at_time(a, 1));
    for (const auto& a : c.exclusions) ok = ok && !model.contains(at_time(a, 1));
    if (ok) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(cdpis.size());
}

std::vector<Cdpi> cdpis_for(const std::vector<Cdpi>& cdpis, const GroundAtom& action_atom) {
  const auto init = wrap("init", action_atom), contd = wrap("contd", action_atom);
  std::vector<Cdpi> out;
  for (const auto& c : cdpis)
    if (c.inclusions.contains(init) || c.inclusions.contains(contd)) out.push_back(c);
  return out;
}

void write_trace_archive(const std::vector<Trace>& traces, std::ostream& out) {
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const auto& trace = traces[i];
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
      const auto& step = trace.steps[k];
      nlohmann::json line = {{"trace", i}, {"step", k}, {"features", sorted_text(step.features)},
                             {"action", step.action}, {"reward", step.reward}};
      out << line.dump() << '\n';
    }
    nlohmann::json summary = {{"trace", i}, {"return", trace.discounted_return}, {"seed", trace.seed}};
    out << summary.dump() << '\n';
  }
}

std::vector<Trace> read_trace_archive(std::istream& in) {
  std::map<std::size_t, Trace> traces;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw IoError(std::string("bad trace archive line: ") + e.what());
    }
    Trace& t = traces[j.at("trace").get<std::size_t>()];
    if (j.contains("return")) {
      t.discounted_return = j.at("return").get<double>();
      t.seed = j.at("seed").get<std::uint64_t>();
      continue;
    }
    TraceStep step;
    for (const auto& f : j.at("features")) step.features.insert(logic::parse_ground_atom(f.get<std::string>()));
    step.action = j.at("action").get<int>();
    step.reward = j.at("reward").get<double>();
    t.steps.push_back(std::move(step));
  }
  std::vector<Trace> out;
  for (auto& [i, t] : traces) out.push_back(std::move(t));
  return out;
}

}  // namespace ecplan
