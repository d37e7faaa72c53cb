#pragma once

#include <string>
#include <vector>

#include "cps/scheme.hpp"

namespace cps {

std::vector<std::string> builtin_names();
// Throws std::invalid_argument for an unknown name.
Scheme builtin_scheme(const std::string& name, bool shifted = true);

}  // namespace cps
