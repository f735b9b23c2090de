#include "ecplan/logic/grounder.hpp"

#include <algorithm>
#include <optional>

#include "ecplan/logic/errors.hpp"
#include "analysis.hpp"
#include "ecplan/logic/parser.hpp"
#include "engine.hpp"

namespace ecplan::logic {

namespace {

using Binding = std::map<std::string, Value>;

struct Grounding {
  const Binding& binding;
  const Value* time;
};

// nullopt when the instance is ill-typed.
std::optional<Term> ground_term(const Term& term, const Grounding& g) {
  switch (term.kind) {
    case Term::Kind::Constant:
      return term;
    case Term::Kind::Variable:
      return Term::constant(g.binding.at(term.name));
    case Term::Kind::Time:
      if (!g.time) return term;
      return Term::constant(*g.time);
    case Term::Kind::Function: {
      std::vector<Term> args;
      for (const auto& a : term.args) {
        auto ga = ground_term(a, g);
        if (!ga) return std::nullopt;
        args.push_back(std::move(*ga));
      }
      Term out = term;
      out.args = std::move(args);
      if (!out.mentions_time()) return Term::constant(to_value(out));
      return out;
    }
    case Term::Kind::Binary:
    case Term::Kind::Negation: {
      Term out = term;
      for (auto& a : out.args) {
        auto ga = ground_term(a, g);
        if (!ga) return std::nullopt;
        a = std::move(*ga);
      }
      if (out.mentions_time()) return out;
      try {
        auto v = detail::evaluate(out, detail::Env{});
        return Term::constant(*v);
      } catch (const EvaluationError&) {
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

std::optional<Atom> ground_atom(const Atom& atom, const Grounding& g) {
  Atom out{atom.predicate, {}};
  for (const auto& a : atom.args) {
    auto ga = ground_term(a, g);
    if (!ga) return std::nullopt;
    out.args.push_back(std::move(*ga));
  }
  return out;
}

// Returns false when the instance must be deleted.
bool ground_body(const std::vector<Literal>& body, const Grounding& g, std::vector<Literal>& out) {
  for (const auto& literal : body) {
    if (const auto* atom = std::get_if<Atom>(&literal)) {
      auto ga = ground_atom(*atom, g);
      if (!ga) return false;
      out.emplace_back(std::move(*ga));
    } else if (const auto* neg = std::get_if<Negated>(&literal)) {
      auto ga = ground_atom(neg->atom, g);
      if (!ga) return false;
      out.emplace_back(Negated{std::move(*ga)});
    } else {
      const auto& cmp = std::get<Comparison>(literal);
      auto l = ground_term(cmp.lhs, g);
      auto r = ground_term(cmp.rhs, g);
      if (!l || !r) return false;
      if (l->kind == Term::Kind::Constant && r->kind == Term::Kind::Constant) {
        try {
          if (!detail::compare(l->value, cmp.op, r->value)) return false;
        } catch (const EvaluationError&) {
          return false;
        }
        continue;
      }
      out.emplace_back(Comparison{std::move(*l), cmp.op, std::move(*r)});
    }
  }
  return true;
}

class Instantiator {
 public:
  Instantiator(const Universe& universe, bool uses_time) : universe_(universe) {
    if (uses_time) {
      auto it = universe.find("t");
      if (it == universe.end() || it->second.empty())
        throw UniverseError("time symbol t is referenced but has no constants");
      times_ = &it->second;
    }
  }

  template <class F>
  void each(const std::vector<std::string>& vars, F&& emit) {
    for (const auto& v : vars) {
      auto it = universe_.find(v);
      if (it == universe_.end() || it->second.empty())
        throw UniverseError("variable " + v + " is referenced but has no constants");
    }
    Binding binding;
    recurse(vars, 0, binding, emit);
  }

 private:
  template <class F>
  void recurse(const std::vector<std::string>& vars, std::size_t i, Binding& binding, F& emit) {
    if (i == vars.size()) {
      if (!times_) {
        emit(Grounding{binding, nullptr});
        return;
      }
      for (const auto& t : *times_) emit(Grounding{binding, &t});
      return;
    }
    for (const auto& value : universe_.at(vars[i])) {
      binding.insert_or_assign(vars[i], value);
      recurse(vars, i + 1, binding, emit);
    }
    binding.erase(vars[i]);
  }

  const Universe& universe_;
  const std::vector<Value>* times_ = nullptr;
};

bool body_mentions_time(const std::vector<Literal>& body) {
  for (const auto& literal : body) {
    if (const auto* atom = std::get_if<Atom>(&literal)) {
      for (const auto& a : atom->args) if (a.mentions_time()) return true;
    } else if (const auto* neg = std::get_if<Negated>(&literal)) {
      for (const auto& a : neg->atom.args) if (a.mentions_time()) return true;
    } else {
      const auto& cmp = std::get<Comparison>(literal);
      if (cmp.lhs.mentions_time() || cmp.rhs.mentions_time()) return true;
    }
  }
  return false;
}

bool atom_mentions_time(const Atom& atom) {
  for (const auto& a : atom.args) if (a.mentions_time()) return true;
  return false;
}

std::vector<std::string> body_variables(const std::vector<Literal>& body) {
  std::vector<std::string> vars;
  for (const auto& literal : body) {
    for (auto& v : detail::variables_of(literal)) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
  }
  return vars;
}

}  // namespace

Program ground(const Program& source, const Universe& universe) {
  const Program program = detail::substitute_constants(source);
  Program out;
  out.constants = program.constants;
  out.facts = program.facts;

  for (const auto& rule : program.rules) {
    auto vars = body_variables(rule.body);
    for (const auto& a : rule.head.args) a.collect_variables(vars);
    Instantiator inst(universe, atom_mentions_time(rule.head) || body_mentions_time(rule.body));
    inst.each(vars, [&](const Grounding& g) {
      auto head = ground_atom(rule.head, g);
      if (!head) return;
      NormalRule r{std::move(*head), {}};
      if (!ground_body(rule.body, g, r.body)) return;
      out.rules.push_back(std::move(r));
    });
  }
  for (const auto& c : program.constraints) {
    Instantiator inst(universe, body_mentions_time(c.body));
    inst.each(body_variables(c.body), [&](const Grounding& g) {
      Constraint k;
      if (ground_body(c.body, g, k.body)) out.constraints.push_back(std::move(k));
    });
  }
  for (const auto& choice : program.choices) {
    // Choice rules are grounded element-wise; the global body must be ground.
    ChoiceRule copy = choice;
    copy.elements.clear();
    for (const auto& element : choice.elements) {
      auto vars = body_variables(element.condition);
      for (const auto& a : element.atom.args) a.collect_variables(vars);
      Instantiator inst(universe, atom_mentions_time(element.atom) || body_mentions_time(element.condition));
      inst.each(vars, [&](const Grounding& g) {
        auto atom = ground_atom(element.atom, g);
        if (!atom) return;
        ChoiceElement e{std::move(*atom), {}};
        if (ground_body(element.condition, g, e.condition)) copy.elements.push_back(std::move(e));
      });
    }
    out.choices.push_back(std::move(copy));
  }
  for (const auto& w : program.weak_constraints) {
    auto vars = body_variables(w.body);
    Instantiator inst(universe, body_mentions_time(w.body));
    inst.each(vars, [&](const Grounding& g) {
      WeakConstraint k;
      if (!ground_body(w.body, g, k.body)) return;
      auto weight = ground_term(w.weight, g);
      auto priority = ground_term(w.priority, g);
      if (!weight || !priority) return;
      k.weight = std::move(*weight);
      k.priority = std::move(*priority);
      for (const auto& term : w.terms) {
        auto gt = ground_term(term, g);
        if (!gt) return;
        k.terms.push_back(std::move(*gt));
      }
      out.weak_constraints.push_back(std::move(k));
    });
  }
  return out;
}

}  // namespace ecplan::logic
