#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ecplan/logic/value.hpp"

namespace ecplan::logic {

/// Non-ground term. `Time` is the reserved symbol `t`: the current time step,
/// supplied at evaluation time. Arithmetic (`D+1`, `t-1`, `-V`) is over
/// integers only.
struct Term {
  enum class Kind : std::uint8_t { Constant, Variable, Time, Function, Binary, Negation };

  Kind kind = Kind::Constant;
  Value value;              // Constant
  std::string name;         // Variable, Function
  char op = 0;              // Binary: '+', '-', '*'
  std::vector<Term> args;   // Function arguments; Binary/Negation operands
  int slot = -1;            // Variable index within its rule, set by the compiler

  static Term constant(Value v) {
    Term t;
    t.kind = Kind::Constant;
    t.value = std::move(v);
    return t;
  }
  static Term integer(std::int64_t n) { return constant(Value::integer(n)); }
  static Term symbol(std::string s) { return constant(Value::symbol(std::move(s))); }
  static Term variable(std::string n) {
    Term t;
    t.kind = Kind::Variable;
    t.name = std::move(n);
    return t;
  }
  static Term time() {
    Term t;
    t.kind = Kind::Time;
    return t;
  }
  static Term function(std::string n, std::vector<Term> arguments);
  static Term binary(char op, Term lhs, Term rhs);
  static Term negation(Term operand);

  [[nodiscard]] bool is_ground() const;  // no variables (time allowed)
  [[nodiscard]] bool mentions_time() const;
  void collect_variables(std::vector<std::string>& out) const;
  [[nodiscard]] std::string str() const;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  [[nodiscard]] Signature signature() const { return {predicate, args.size()}; }
  [[nodiscard]] std::string str() const;
};

struct Negated {
  Atom atom;
};

enum class CompareOp : std::uint8_t { Less, LessEqual, Greater, GreaterEqual, Equal, NotEqual };

struct Comparison {
  Term lhs;
  CompareOp op = CompareOp::Equal;
  Term rhs;
};

using Literal = std::variant<Atom, Negated, Comparison>;

std::string to_string(const Literal& literal);
std::string to_string(CompareOp op);

struct NormalRule {
  Atom head;
  std::vector<Literal> body;
};

/// Headless rule `:- body.`
struct Constraint {
  std::vector<Literal> body;
};

struct ChoiceElement {
  Atom atom;
  std::vector<Literal> condition;
};

/// `lower { a : cond ; ... } upper :- body.` An upper bound naming an
/// undefined constant is unbounded.
struct ChoiceRule {
  std::int64_t lower = 0;
  std::optional<Term> upper;
  std::vector<ChoiceElement> elements;
  std::vector<Literal> body;
};

/// `:~ body. [weight@priority, terms...]`
struct WeakConstraint {
  std::vector<Literal> body;
  Term weight;
  Term priority;
  std::vector<Term> terms;
};

struct Program {
  std::vector<NormalRule> rules;
  std::vector<Constraint> constraints;
  std::vector<ChoiceRule> choices;
  std::vector<WeakConstraint> weak_constraints;
  AtomSet facts;
  std::map<std::string, Value> constants;

  /// Appends every statement of `other`.
  void merge(const Program& other);
  [[nodiscard]] bool empty() const {
    return rules.empty() && constraints.empty() && choices.empty() && weak_constraints.empty() &&
           facts.empty();
  }
  [[nodiscard]] std::string str() const;
};

std::string to_string(const NormalRule& rule);

}  // namespace ecplan::logic
