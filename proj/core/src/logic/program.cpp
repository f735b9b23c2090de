#include "ecplan/logic/program.hpp"

#include <algorithm>

namespace ecplan::logic {

Term Term::function(std::string n, std::vector<Term> arguments) {
  if (arguments.empty()) return symbol(std::move(n));
  Term t;
  t.kind = Kind::Function;
  t.name = std::move(n);
  t.args = std::move(arguments);
  return t;
}

Term Term::binary(char op, Term lhs, Term rhs) {
  Term t;
  t.kind = Kind::Binary;
  t.op = op;
  t.args.push_back(std::move(lhs));
  t.args.push_back(std::move(rhs));
  return t;
}

Term Term::negation(Term operand) {
  Term t;
  t.kind = Kind::Negation;
  t.args.push_back(std::move(operand));
  return t;
}

bool Term::is_ground() const {
  if (kind == Kind::Variable) return false;
  return std::all_of(args.begin(), args.end(), [](const Term& a) { return a.is_ground(); });
}

bool Term::mentions_time() const {
  if (kind == Kind::Time) return true;
  return std::any_of(args.begin(), args.end(), [](const Term& a) { return a.mentions_time(); });
}

void Term::collect_variables(std::vector<std::string>& out) const {
  if (kind == Kind::Variable) {
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    return;
  }
  for (const auto& a : args) a.collect_variables(out);
}

std::string Term::str() const {
  switch (kind) {
    case Kind::Constant:
      return value.str();
    case Kind::Variable:
      return name;
    case Kind::Time:
      return "t";
    case Kind::Function: {
      std::string out = name + "(";
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        out += args[i].str();
      }
      return out + ")";
    }
    case Kind::Binary:
      return args[0].str() + op + args[1].str();
    case Kind::Negation:
      return "-" + args[0].str();
  }
  return {};
}

std::string Atom::str() const {
  std::string out = predicate;
  if (args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    out += args[i].str();
  }
  return out + ")";
}

std::string to_string(CompareOp op) {
  switch (op) {
    case CompareOp::Less: return "<";
    case CompareOp::LessEqual: return "<=";
    case CompareOp::Greater: return ">";
    case CompareOp::GreaterEqual: return ">=";
    case CompareOp::Equal: return "=";
    case CompareOp::NotEqual: return "!=";
  }
  return "?";
}

std::string to_string(const Literal& literal) {
  struct Printer {
    std::string operator()(const Atom& a) const { return a.str(); }
    std::string operator()(const Negated& n) const { return "not " + n.atom.str(); }
    std::string operator()(const Comparison& c) const {
      return c.lhs.str() + to_string(c.op) + c.rhs.str();
    }
  };
  return std::visit(Printer{}, literal);
}

namespace {

std::string body_str(const std::vector<Literal>& body) {
  std::string out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i) out += ", ";
    out += to_string(body[i]);
  }
  return out;
}

}  // namespace

std::string to_string(const NormalRule& rule) {
  if (rule.body.empty()) return rule.head.str() + ".";
  return rule.head.str() + " :- " + body_str(rule.body) + ".";
}

void Program::merge(const Program& other) {
  rules.insert(rules.end(), other.rules.begin(), other.rules.end());
  constraints.insert(constraints.end(), other.constraints.begin(), other.constraints.end());
  choices.insert(choices.end(), other.choices.begin(), other.choices.end());
  weak_constraints.insert(weak_constraints.end(), other.weak_constraints.begin(),
                          other.weak_constraints.end());
  facts.insert(other.facts.begin(), other.facts.end());
  for (const auto& [name, value] : other.constants) constants.insert_or_assign(name, value);
}

std::string Program::str() const {
  std::string out;
  for (const auto& [name, value] : constants) out += "#const " + name + "=" + value.str() + ".\n";
  for (const auto& fact : facts) out += fact.str() + ".\n";
  for (const auto& rule : rules) out += to_string(rule) + "\n";
  for (const auto& c : constraints) out += ":- " + body_str(c.body) + ".\n";
  for (const auto& choice : choices) {
    out += std::to_string(choice.lower) + "{ ";
    for (std::size_t i = 0; i < choice.elements.size(); ++i) {
      if (i) out += "; ";
      out += choice.elements[i].atom.str();
      if (!choice.elements[i].condition.empty()) out += ": " + body_str(choice.elements[i].condition);
    }
    out += " }";
    if (choice.upper) out += choice.upper->str();
    if (!choice.body.empty()) out += " :- " + body_str(choice.body);
    out += ".\n";
  }
  for (const auto& w : weak_constraints) {
    out += ":~ " + body_str(w.body) + ". [" + w.weight.str() + "@" + w.priority.str();
    for (const auto& term : w.terms) out += ", " + term.str();
    out += "]\n";
  }
  return out;
}

}  // namespace ecplan::logic
