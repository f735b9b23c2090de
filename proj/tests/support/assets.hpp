#pragma once

#include <string>

#include "ecplan/logic/parser.hpp"

namespace ecplan::testing {

inline std::string asset(const std::string& relative) { return std::string(ECPLAN_ASSET_DIR) + "/" + relative; }

inline logic::Program theory(const std::string& name) { return logic::load_program(asset("theories/" + name)); }

}  // namespace ecplan::testing
