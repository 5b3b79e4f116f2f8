#pragma once

// JSON lattice-configuration files.  Schema:
//
// {
//   "size": 64,
//   "boundaries": {
//     "left":  {"kind": "typeI", "upsilon": 0.0},
//     "right": {"kind": "typeI", "upsilon": 0.0}
//   },
//   "segments":  [{"from": 0, "to": 63, "rho": 0.0, "theta": 0.7853981633974483}],
//   "junctions": [{"kind": "typeII", "site": 31}]
// }
//
// Boundary kinds: "periodic" (must appear on both sides), "typeI" (upsilon),
// "typeII" (zeta), "typeIII" (upsilon, zeta, theta_prime).  All angles are
// decimal radians.  Unknown or misplaced keys are rejected.

#include "qlga/lattice.hpp"

#include <iosfwd>
#include <string>

namespace qlga {

// Parse only; semantic checks live in validate_config.  Schema violations
// (bad types, unknown keys, malformed JSON) throw Errc::InvalidArgument.
LatticeConfig parse_config(const std::string& json_text);
LatticeConfig load_config(const std::string& path);

std::string config_to_json(const LatticeConfig& config);

} // namespace qlga
