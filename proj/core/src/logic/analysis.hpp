#pragma once

#include <set>
#include <string>
#include <vector>

#include "ecplan/logic/program.hpp"

namespace ecplan::logic::detail {

/// True if every variable of `term` is in `bound`.
bool resolvable(const Term& term, const std::set<std::string>& bound);

/// Adds to `bound` the variables that matching `pattern` against a ground
/// value would bind. Arithmetic binds its free side only when the other side
/// is already resolvable.
void bind_by_matching(const Term& pattern, std::set<std::string>& bound);

/// Variables bound by the positive atoms of `body`, iterated to a fixpoint.
std::set<std::string> positively_bound(const std::vector<Literal>& body,
                                       std::set<std::string> bound = {});

/// True once matching `atom` can bind all its variables given `bound`.
bool matchable(const Atom& atom, const std::set<std::string>& bound);

std::vector<std::string> variables_of(const Literal& literal);

}  // namespace ecplan::logic::detail
