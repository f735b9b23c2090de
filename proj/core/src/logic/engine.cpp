#include "engine.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "analysis.hpp"
#include "ecplan/logic/errors.hpp"

namespace ecplan::logic::detail {

Term assign_slots(const Term& term, SlotMap& slots) {
  Term out = term;
  if (out.kind == Term::Kind::Variable) {
    auto [it, inserted] = slots.try_emplace(out.name, static_cast<int>(slots.size()));
    out.slot = it->second;
    return out;
  }
  for (auto& a : out.args) a = assign_slots(a, slots);
  return out;
}

Atom assign_slots(const Atom& atom, SlotMap& slots) {
  Atom out{atom.predicate, {}};
  out.args.reserve(atom.args.size());
  for (const auto& a : atom.args) out.args.push_back(assign_slots(a, slots));
  return out;
}

Literal assign_slots(const Literal& literal, SlotMap& slots) {
  if (const auto* atom = std::get_if<Atom>(&literal)) return assign_slots(*atom, slots);
  if (const auto* neg = std::get_if<Negated>(&literal)) return Negated{assign_slots(neg->atom, slots)};
  const auto& cmp = std::get<Comparison>(literal);
  return Comparison{assign_slots(cmp.lhs, slots), cmp.op, assign_slots(cmp.rhs, slots)};
}

namespace {

std::int64_t arith(char op, std::int64_t a, std::int64_t b) {
  switch (op) {
    case '+': return a + b;
    case '-': return a - b;
    default: return a * b;
  }
}

}  // namespace

std::optional<Value> evaluate(const Term& term, const Env& env) {
  switch (term.kind) {
    case Term::Kind::Constant:
      return term.value;
    case Term::Kind::Variable:
      if (term.slot < 0 || static_cast<std::size_t>(term.slot) >= env.slots.size()) return std::nullopt;
      return env.slots[static_cast<std::size_t>(term.slot)];
    case Term::Kind::Time:
      if (!env.time) throw EvaluationError("time-indexed term evaluated without a time step");
      return Value::integer(*env.time);
    case Term::Kind::Function: {
      std::vector<Value> args;
      args.reserve(term.args.size());
      for (const auto& a : term.args) {
        auto v = evaluate(a, env);
        if (!v) return std::nullopt;
        args.push_back(std::move(*v));
      }
      return Value::function(term.name, std::move(args));
    }
    case Term::Kind::Binary: {
      auto l = evaluate(term.args[0], env);
      auto r = evaluate(term.args[1], env);
      if (!l || !r) return std::nullopt;
      if (!l->is_integer() || !r->is_integer())
        throw EvaluationError("arithmetic on non-integer values in " + term.str());
      return Value::integer(arith(term.op, l->number(), r->number()));
    }
    case Term::Kind::Negation: {
      auto v = evaluate(term.args[0], env);
      if (!v) return std::nullopt;
      if (!v->is_integer()) throw EvaluationError("negation of non-integer value in " + term.str());
      return Value::integer(-v->number());
    }
  }
  return std::nullopt;
}

GroundAtom instantiate(const Atom& atom, const Env& env) {
  GroundAtom g{atom.predicate, {}};
  g.args.reserve(atom.args.size());
  for (const auto& a : atom.args) {
    auto v = evaluate(a, env);
    if (!v) throw EvaluationError("unbound variable while instantiating " + atom.str());
    g.args.push_back(std::move(*v));
  }
  return g;
}

bool compare(const Value& lhs, CompareOp op, const Value& rhs) {
  if (op == CompareOp::Equal) return lhs == rhs;
  if (op == CompareOp::NotEqual) return !(lhs == rhs);
  if (!lhs.is_integer() || !rhs.is_integer())
    throw EvaluationError("ordering comparison on non-integer values " + lhs.str() + " " +
                          to_string(op) + " " + rhs.str());
  const auto a = lhs.number();
  const auto b = rhs.number();
  switch (op) {
    case CompareOp::Less: return a < b;
    case CompareOp::LessEqual: return a <= b;
    case CompareOp::Greater: return a > b;
    case CompareOp::GreaterEqual: return a >= b;
    default: return false;
  }
}

bool Store::insert(const GroundAtom& atom) {
  auto [it, inserted] = atoms_.insert(atom);
  if (inserted) index_[signature_of(*it)].push_back(&*it);
  return inserted;
}

const std::vector<const GroundAtom*>& Store::with(const Signature& sig) const {
  static const std::vector<const GroundAtom*> none;
  auto it = index_.find(sig);
  return it == index_.end() ? none : it->second;
}

bool match(const Term& pattern, const Value& value, Env& env, std::vector<int>& trail) {
  switch (pattern.kind) {
    case Term::Kind::Constant:
      return pattern.value == value;
    case Term::Kind::Time:
      if (!env.time) throw EvaluationError("time-indexed atom matched without a time step");
      return value.is_integer() && value.number() == *env.time;
    case Term::Kind::Variable: {
      auto& slot = env.slots[static_cast<std::size_t>(pattern.slot)];
      if (slot) return *slot == value;
      slot = value;
      trail.push_back(pattern.slot);
      return true;
    }
    case Term::Kind::Function:
      if (value.kind() != Value::Kind::Function || value.name() != pattern.name ||
          value.args().size() != pattern.args.size())
        return false;
      for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        if (!match(pattern.args[i], value.args()[i], env, trail)) return false;
      }
      return true;
    case Term::Kind::Binary: {
      if (auto full = evaluate(pattern, env)) return *full == value;
      if (!value.is_integer()) return false;
      const std::int64_t v = value.number();
      if (auto l = evaluate(pattern.args[0], env)) {
        if (!l->is_integer()) return false;
        const std::int64_t a = l->number();
        switch (pattern.op) {
          case '+': return match(pattern.args[1], Value::integer(v - a), env, trail);
          case '-': return match(pattern.args[1], Value::integer(a - v), env, trail);
          default:
            if (a == 0 || v % a != 0) return false;
            return match(pattern.args[1], Value::integer(v / a), env, trail);
        }
      }
      if (auto r = evaluate(pattern.args[1], env)) {
        if (!r->is_integer()) return false;
        const std::int64_t b = r->number();
        switch (pattern.op) {
          case '+': return match(pattern.args[0], Value::integer(v - b), env, trail);
          case '-': return match(pattern.args[0], Value::integer(v + b), env, trail);
          default:
            if (b == 0 || v % b != 0) return false;
            return match(pattern.args[0], Value::integer(v / b), env, trail);
        }
      }
      return false;
    }
    case Term::Kind::Negation:
      if (!value.is_integer()) return false;
      return match(pattern.args[0], Value::integer(-value.number()), env, trail);
  }
  return false;
}

BodyPlan plan_body(const std::vector<Literal>& body, const std::vector<std::string>& prebound,
                   std::size_t statement) {
  std::set<std::string> bound(prebound.begin(), prebound.end());
  std::vector<bool> placed(body.size(), false);
  BodyPlan plan;
  std::size_t remaining = body.size();

  auto place_filters = [&] {
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (placed[i] || std::holds_alternative<Atom>(body[i])) continue;
      const auto vars = variables_of(body[i]);
      if (std::all_of(vars.begin(), vars.end(), [&](const auto& v) { return bound.contains(v); })) {
        plan.steps.push_back(body[i]);
        placed[i] = true;
        --remaining;
      }
    }
  };

  place_filters();
  while (remaining > 0) {
    bool progressed = false;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (placed[i]) continue;
      const auto* atom = std::get_if<Atom>(&body[i]);
      if (!atom || !matchable(*atom, bound)) continue;
      plan.steps.push_back(body[i]);
      placed[i] = true;
      --remaining;
      for (const auto& a : atom->args) bind_by_matching(a, bound);
      progressed = true;
      break;
    }
    place_filters();
    if (!progressed && remaining > 0) {
      for (std::size_t i = 0; i < body.size(); ++i) {
        if (placed[i]) continue;
        for (const auto& v : variables_of(body[i])) {
          if (!bound.contains(v)) throw SafetyError(statement, v);
        }
      }
      throw SafetyError(statement, "?");
    }
  }
  return plan;
}

CompiledRule compile_rule(const NormalRule& rule, std::size_t statement) {
  SlotMap slots;
  std::vector<Literal> body;
  body.reserve(rule.body.size());
  for (const auto& l : rule.body) body.push_back(assign_slots(l, slots));
  CompiledRule out;
  out.head = assign_slots(rule.head, slots);
  out.body = plan_body(body, {}, statement);
  out.slot_count = static_cast<int>(slots.size());
  std::vector<std::string> head_vars;
  for (const auto& a : rule.head.args) a.collect_variables(head_vars);
  const auto bound = positively_bound(rule.body);
  for (const auto& v : head_vars) {
    if (!bound.contains(v)) throw SafetyError(statement, v);
  }
  return out;
}

namespace {

Term substitute(const Term& term, const std::map<std::string, Value>& constants) {
  if (term.kind == Term::Kind::Constant && term.value.kind() == Value::Kind::Symbol) {
    auto it = constants.find(term.value.name());
    if (it != constants.end()) return Term::constant(it->second);
    return term;
  }
  Term out = term;
  for (auto& a : out.args) a = substitute(a, constants);
  return out;
}

Atom substitute(const Atom& atom, const std::map<std::string, Value>& constants) {
  Atom out{atom.predicate, {}};
  for (const auto& a : atom.args) out.args.push_back(substitute(a, constants));
  return out;
}

std::vector<Literal> substitute(const std::vector<Literal>& body,
                                const std::map<std::string, Value>& constants) {
  std::vector<Literal> out;
  out.reserve(body.size());
  for (const auto& literal : body) {
    if (const auto* atom = std::get_if<Atom>(&literal)) {
      out.emplace_back(substitute(*atom, constants));
    } else if (const auto* neg = std::get_if<Negated>(&literal)) {
      out.emplace_back(Negated{substitute(neg->atom, constants)});
    } else {
      const auto& cmp = std::get<Comparison>(literal);
      out.emplace_back(Comparison{substitute(cmp.lhs, constants), cmp.op, substitute(cmp.rhs, constants)});
    }
  }
  return out;
}

}  // namespace

Program substitute_constants(const Program& program) {
  if (program.constants.empty()) return program;
  const auto& c = program.constants;
  Program out;
  out.constants = c;
  out.facts = program.facts;
  for (const auto& r : program.rules) out.rules.push_back({substitute(r.head, c), substitute(r.body, c)});
  for (const auto& k : program.constraints) out.constraints.push_back({substitute(k.body, c)});
  for (const auto& choice : program.choices) {
    ChoiceRule copy = choice;
    for (auto& e : copy.elements) {
      e.atom = substitute(e.atom, c);
      e.condition = substitute(e.condition, c);
    }
    copy.body = substitute(copy.body, c);
    out.choices.push_back(std::move(copy));
  }
  for (const auto& w : program.weak_constraints) {
    WeakConstraint copy = w;
    copy.body = substitute(w.body, c);
    copy.weight = substitute(w.weight, c);
    copy.priority = substitute(w.priority, c);
    for (auto& term : copy.terms) term = substitute(term, c);
    out.weak_constraints.push_back(std::move(copy));
  }
  return out;
}

std::optional<std::int64_t> choice_upper(const ChoiceRule& choice, const Program& program) {
  if (!choice.upper) return std::nullopt;
  const Term& u = *choice.upper;
  std::string name;
  if (u.kind == Term::Kind::Variable) {
    name = u.name;
  } else if (u.kind == Term::Kind::Constant) {
    if (u.value.is_integer()) return u.value.number();
    name = u.value.name();
  } else {
    Env env;
    auto v = evaluate(u, env);
    if (v && v->is_integer()) return v->number();
    throw EvaluationError("choice upper bound is not an integer: " + u.str());
  }
  auto it = program.constants.find(name);
  if (it == program.constants.end()) return std::nullopt;
  if (!it->second.is_integer()) throw EvaluationError("choice upper bound is not an integer: " + name);
  return it->second.number();
}

namespace {

struct Edge {
  std::size_t to;
  bool negative;
};

class Tarjan {
 public:
  explicit Tarjan(const std::vector<std::vector<Edge>>& graph) : graph_(graph) {
    const std::size_t n = graph.size();
    index_.assign(n, -1);
    low_.assign(n, 0);
    on_stack_.assign(n, false);
    for (std::size_t v = 0; v < n; ++v) {
      if (index_[v] < 0) visit(v);
    }
  }
  std::vector<std::vector<std::size_t>> components;

 private:
  void visit(std::size_t v) {
    index_[v] = low_[v] = counter_++;
    stack_.push_back(v);
    on_stack_[v] = true;
    for (const auto& e : graph_[v]) {
      if (index_[e.to] < 0) {
        visit(e.to);
        low_[v] = std::min(low_[v], low_[e.to]);
      } else if (on_stack_[e.to]) {
        low_[v] = std::min(low_[v], index_[e.to]);
      }
    }
    if (low_[v] == index_[v]) {
      std::vector<std::size_t> component;
      std::size_t w;
      do {
        w = stack_.back();
        stack_.pop_back();
        on_stack_[w] = false;
        component.push_back(w);
      } while (w != v);
      components.push_back(std::move(component));
    }
  }

  const std::vector<std::vector<Edge>>& graph_;
  std::vector<int> index_;
  std::vector<int> low_;
  std::vector<bool> on_stack_;
  std::vector<std::size_t> stack_;
  int counter_ = 0;
};

}  // namespace

std::vector<std::vector<Signature>> stratify(const Program& program) {
  std::map<Signature, std::size_t> ids;
  std::vector<Signature> names;
  auto id_of = [&](const Signature& sig) {
    auto [it, inserted] = ids.try_emplace(sig, names.size());
    if (inserted) names.push_back(sig);
    return it->second;
  };
  std::vector<std::vector<Edge>> graph;
  auto add_edges = [&](const Signature& head, const std::vector<Literal>& body) {
    const std::size_t h = id_of(head);
    for (const auto& literal : body) {
      std::optional<Edge> edge;
      if (const auto* atom = std::get_if<Atom>(&literal)) {
        edge = Edge{id_of(atom->signature()), false};
      } else if (const auto* neg = std::get_if<Negated>(&literal)) {
        edge = Edge{id_of(neg->atom.signature()), true};
      }
      if (!edge) continue;
      if (graph.size() < names.size()) graph.resize(names.size());
      graph[h].push_back(*edge);
    }
    if (graph.size() < names.size()) graph.resize(names.size());
  };
  for (const auto& fact : program.facts) id_of(signature_of(fact));
  for (const auto& rule : program.rules) add_edges(rule.head.signature(), rule.body);
  for (const auto& choice : program.choices) {
    for (const auto& element : choice.elements) {
      std::vector<Literal> deps = element.condition;
      deps.insert(deps.end(), choice.body.begin(), choice.body.end());
      add_edges(element.atom.signature(), deps);
    }
  }
  graph.resize(names.size());

  Tarjan tarjan(graph);
  std::vector<std::size_t> component_of(names.size());
  for (std::size_t c = 0; c < tarjan.components.size(); ++c) {
    for (auto v : tarjan.components[c]) component_of[v] = c;
  }
  for (std::size_t v = 0; v < graph.size(); ++v) {
    for (const auto& e : graph[v]) {
      if (e.negative && component_of[e.to] == component_of[v])
        throw StratificationError("negative cycle through " + names[v].str() + " and " +
                                  names[e.to].str());
    }
  }
  std::vector<std::vector<Signature>> strata;
  strata.reserve(tarjan.components.size());
  for (const auto& component : tarjan.components) {
    std::vector<Signature> stratum;
    for (auto v : component) stratum.push_back(names[v]);
    std::sort(stratum.begin(), stratum.end());
    strata.push_back(std::move(stratum));
  }
  return strata;
}

}  // namespace ecplan::logic::detail
