#pragma once

#include <map>
#include <string>
#include <vector>

#include "ecplan/logic/program.hpp"

namespace ecplan::logic {

/// Constant domain per variable name. The key "t" enumerates the time symbol.
using Universe = std::map<std::string, std::vector<Value>>;

/// Replaces every variable by every constant of its domain. Instances whose
/// arithmetic is ill-typed are dropped; ground comparisons are folded (true
/// ones removed, false ones delete the instance). Throws UniverseError if a
/// referenced variable has no constants.
Program ground(const Program& program, const Universe& universe);

}  // namespace ecplan::logic
