#include "ecplan/macro/macro.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ecplan/logic/errors.hpp"
#include "ecplan/logic/parser.hpp"

namespace ecplan {

using logic::AtomSet;
using logic::GroundAtom;
using logic::Program;
using logic::Value;

int MacroAction::step(int t) const {
  if (t < 0 || t >= length) throw std::out_of_range("macro step " + std::to_string(t) + " beyond length");
  return action;
}

void CoverageTable::set(int action, double cov) {
  if (action < 0 || action >= size()) throw std::out_of_range("coverage for unknown action");
  if (!(cov >= 0.0 && cov <= 1.0)) throw std::invalid_argument("coverage must lie in [0,1]");
  values_[static_cast<std::size_t>(action)] = cov;
}

double CoverageTable::at(int action) const {
  if (action < 0 || action >= size()) return 1.0;
  return values_[static_cast<std::size_t>(action)];
}

std::map<std::string, double> read_coverage_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coverage file " + path);
  std::map<std::string, double> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    out[trim(line.substr(0, eq))] = std::stod(trim(line.substr(eq + 1)));
  }
  return out;
}

Hypothesis::Hypothesis(Program program) : program_(std::move(program)) {}

namespace {

bool head_selects(const logic::Atom& head, const GroundAtom& action_atom) {
  if (head.predicate != "init" && head.predicate != "contd") return true;
  if (head.args.empty()) return true;
  const auto& first = head.args[0];
  if (!first.is_ground() || first.mentions_time()) return true;
  return logic::to_value(first) == Value::function(action_atom.predicate, action_atom.args);
}

}  // namespace

Program Hypothesis::for_action(const GroundAtom& action_atom) const {
  Program out = program_;
  out.rules.clear();
  for (const auto& rule : program_.rules) {
    if (head_selects(rule.head, action_atom)) out.rules.push_back(rule);
  }
  return out;
}

bool Hypothesis::covers(const GroundAtom& action_atom) const {
  for (const auto& rule : program_.rules) {
    if ((rule.head.predicate == "init" || rule.head.predicate == "contd") && head_selects(rule.head, action_atom))
      return true;
  }
  return false;
}

GroundAtom at_time(const GroundAtom& atom, std::int64_t k) {
  GroundAtom out = atom;
  out.args.push_back(Value::integer(k));
  return out;
}

TransitionAxioms::TransitionAxioms(Program program) {
  for (const auto& rule : program.rules) {
    if (rule.head.args.empty() || rule.head.args.back().kind != logic::Term::Kind::Time)
      throw logic::EvaluationError("transition rule head must end with t: " + logic::to_string(rule));
    rewritten_[rule.head.predicate] = rule.head.args.size() - 1;
  }
  evaluator_.emplace(program);
}

AtomSet TransitionAxioms::apply(const AtomSet& features, const GroundAtom& action_atom, std::int64_t k,
                                const AtomSet& background) const {
  if (!evaluator_) return features;
  AtomSet input = background;
  AtomSet out;
  for (const auto& f : features) {
    input.insert(at_time(f, k));
    if (!rewritten_.contains(f.predicate)) out.insert(f);
  }
  input.insert(at_time(action_atom, k));
  const Value next = Value::integer(k + 1);
  for (const auto& atom : evaluator_->run(input, k + 1)) {
    auto it = rewritten_.find(atom.predicate);
    if (it == rewritten_.end() || atom.args.size() != it->second + 1 || !(atom.args.back() == next)) continue;
    GroundAtom stripped = atom;
    stripped.args.pop_back();
    out.insert(std::move(stripped));
  }
  return out;
}

namespace {

MacroAction unroll_with(int action, const GroundAtom& action_atom, AtomSet features,
                        const logic::Evaluator& theory, const TransitionAxioms& transitions,
                        const AtomSet& background, int max_length) {
  if (max_length < 1) throw std::invalid_argument("macro length bound must be at least 1");
  const Value alpha = Value::function(action_atom.predicate, action_atom.args);
  MacroAction macro{action, 0};
  for (int k = 1; k <= max_length; ++k) {
    AtomSet input = background;
    input.insert(features.begin(), features.end());
    if (k > 1) input.insert(GroundAtom("holds", {alpha, Value::integer(k - 1)}));
    const AtomSet model = theory.run(input, k);
    const GroundAtom needed(k == 1 ? "init" : "contd", {alpha, Value::integer(k)});
    if (!model.contains(needed) || !model.contains(GroundAtom("holds", {alpha, Value::integer(k)}))) break;
    macro.length = k;
    if (k < max_length) features = transitions.apply(features, action_atom, k, background);
  }
  return macro;
}

}  // namespace

MacroAction unroll_macro(int action, const GroundAtom& action_atom, const AtomSet& features,
                         const Program& theory, const TransitionAxioms& transitions, const AtomSet& background,
                         int max_length) {
  return unroll_with(action, action_atom, features, logic::Evaluator(theory), transitions, background, max_length);
}

MacroGenerator::MacroGenerator(const Program& prelude, const Hypothesis& hypothesis, TransitionAxioms transitions,
                               AtomSet background, std::vector<std::optional<GroundAtom>> action_atoms,
                               int max_length)
    : atoms_(std::move(action_atoms)),
      transitions_(std::move(transitions)),
      background_(std::move(background)),
      max_length_(max_length) {
  if (max_length_ < 1) throw std::invalid_argument("macro length bound must be at least 1");
  for (const auto& atom : atoms_) {
    if (!atom || !hypothesis.covers(*atom)) {
      theories_.emplace_back();
      continue;
    }
    Program theory = prelude;
    theory.merge(hypothesis.for_action(*atom));
    theories_.emplace_back(logic::Evaluator(theory));
  }
}

MacroAction MacroGenerator::unroll(int action, const AtomSet& features) const {
  const auto& theory = theories_.at(static_cast<std::size_t>(action));
  if (!theory) return {action, 0};
  return unroll_with(action, *atoms_[static_cast<std::size_t>(action)], features, *theory, transitions_,
                     background_, max_length_);
}

MacroSet MacroGenerator::compute(const AtomSet& features) const {
  MacroSet out;
  out.reserve(atoms_.size());
  for (int a = 0; a < action_count(); ++a) out.push_back(unroll(a, features));
  return out;
}

void MacroSchedule::refresh(MacroSet macros) {
  macros_ = std::move(macros);
  t_ = 0;
  ++refreshes_;
}

bool MacroSchedule::exhausted() const {
  for (const auto& m : macros_) {
    if (m.length > t_) return false;
  }
  return true;
}

std::vector<int> suggested_actions(const MacroSet& macros, int t) {
  std::vector<int> out;
  for (const auto& m : macros) {
    if (m.length > t) out.push_back(m.action);
  }
  return out;
}

std::optional<MacroAction> longest_macro(const MacroSet& macros, int t) {
  std::optional<MacroAction> best;
  for (const auto& m : macros) {
    if (m.length <= t) continue;
    if (!best || m.length > best->length || (m.length == best->length && m.action < best->action)) best = m;
  }
  return best;
}

}  // namespace ecplan
