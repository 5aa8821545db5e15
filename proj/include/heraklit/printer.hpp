#pragma once

#include <string>

#include "heraklit/module.hpp"

namespace heraklit {

// Canonical module text: declarations ordered by kind then name, value
// items in compare order, LF line endings. parse(print_module(m))
// reproduces m exactly.
std::string print_module(const ModuleNet& m);

}  // namespace heraklit
