#pragma once

#include "heraklit/runs.hpp"

namespace heraklit {

class ComposeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A net with designated interface places. Interface labels are place
// names; left and right are disjoint. Non-interface names get qualified
// with the module name on composition.
struct ModuleNet {
  std::string name;  // optional; compose falls back to a positional name
  Net net;
  std::vector<std::string> left_interface;
  std::vector<std::string> right_interface;

  bool operator==(const ModuleNet&) const = default;
};

// Interface invariants on top of finalize_net.
std::vector<NetIssue> check_module(ModuleNet& m);

// Fuses each place label common to a.right_interface and b.left_interface,
// uniting the initial markings; all other places and all transitions are
// qualified by module name. Shared signature symbols must carry identical
// declarations and interpretations. Throws ComposeError on sort mismatches,
// conflicting interpretations, or name collisions.
ModuleNet compose(const ModuleNet& a, const ModuleNet& b);

}  // namespace heraklit
