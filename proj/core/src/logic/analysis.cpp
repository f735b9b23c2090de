#include "analysis.hpp"

#include <algorithm>

namespace ecplan::logic::detail {

bool resolvable(const Term& term, const std::set<std::string>& bound) {
  if (term.kind == Term::Kind::Variable) return bound.contains(term.name);
  return std::all_of(term.args.begin(), term.args.end(),
                     [&](const Term& a) { return resolvable(a, bound); });
}

void bind_by_matching(const Term& pattern, std::set<std::string>& bound) {
  switch (pattern.kind) {
    case Term::Kind::Variable:
      bound.insert(pattern.name);
      return;
    case Term::Kind::Function:
    case Term::Kind::Negation:
      for (const auto& a : pattern.args) bind_by_matching(a, bound);
      return;
    case Term::Kind::Binary:
      if (resolvable(pattern.args[0], bound)) {
        bind_by_matching(pattern.args[1], bound);
      } else if (resolvable(pattern.args[1], bound)) {
        bind_by_matching(pattern.args[0], bound);
      }
      return;
    case Term::Kind::Constant:
    case Term::Kind::Time:
      return;
  }
}

std::set<std::string> positively_bound(const std::vector<Literal>& body,
                                       std::set<std::string> bound) {
  while (true) {
    const std::size_t before = bound.size();
    for (const auto& literal : body) {
      if (const auto* atom = std::get_if<Atom>(&literal)) {
        for (const auto& arg : atom->args) bind_by_matching(arg, bound);
      }
    }
    if (bound.size() == before) return bound;
  }
}

namespace {

bool term_matchable(const Term& term, const std::set<std::string>& bound) {
  switch (term.kind) {
    case Term::Kind::Constant:
    case Term::Kind::Time:
    case Term::Kind::Variable:
      return true;
    case Term::Kind::Function:
    case Term::Kind::Negation:
      return std::all_of(term.args.begin(), term.args.end(),
                         [&](const Term& a) { return term_matchable(a, bound); });
    case Term::Kind::Binary:
      return resolvable(term, bound) ||
             (resolvable(term.args[0], bound) && term_matchable(term.args[1], bound)) ||
             (resolvable(term.args[1], bound) && term_matchable(term.args[0], bound));
  }
  return false;
}

}  // namespace

bool matchable(const Atom& atom, const std::set<std::string>& bound) {
  // Arguments are matched left to right, so earlier arguments extend the
  // bound set for later ones.
  std::set<std::string> local = bound;
  for (const auto& arg : atom.args) {
    if (!term_matchable(arg, local)) return false;
    bind_by_matching(arg, local);
  }
  return true;
}

std::vector<std::string> variables_of(const Literal& literal) {
  std::vector<std::string> vars;
  if (const auto* atom = std::get_if<Atom>(&literal)) {
    for (const auto& a : atom->args) a.collect_variables(vars);
  } else if (const auto* neg = std::get_if<Negated>(&literal)) {
    for (const auto& a : neg->atom.args) a.collect_variables(vars);
  } else {
    const auto& cmp = std::get<Comparison>(literal);
    cmp.lhs.collect_variables(vars);
    cmp.rhs.collect_variables(vars);
  }
  return vars;
}

}  // namespace ecplan::logic::detail
