#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "nilgrowth/tower.hpp"

namespace nilgrowth {

// Malformed or inconsistent run configuration (exit code 2 at the CLI).
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Wired toy parameter presets:
//   'a'  f = (4),    g = (2),    relation recipe {x},    levels 0..7
//   'b'  f = (2),    g = (1),    relation rows {x^4},    levels 0..4
//   'c'  f = (2, 6), g = (1, 2), rows {x^4} then {x},    levels 0..6
//   'd'  no collapse steps at all (every level doubles), levels 0..6
TowerParams toy_tower_params(char preset, uint32_t p = 2);

// Executes the suites named in the config and writes one artifact per suite
// into the configured out_dir.  Every requested suite runs; none is skipped.
// Returns 0 when every suite passed, 1 otherwise.  config_error and
// capacity_error propagate to the caller (the CLI maps them to 2 and 3).
int run_config(const nlohmann::ordered_json& config);

}  // namespace nilgrowth
