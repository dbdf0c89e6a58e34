#pragma once

#include <string>

#include "metro/simconfig.hpp"
#include "metro/worldspec.hpp"

namespace metro {

struct LoadedConfig {
  WorldSpec world;
  SimConfig sim;
};

// Reads the combined world + simulation configuration (JSON; see
// docs/worldspec.md). Validates both parts; throws ConfigError with the
// offending field on any violation.
LoadedConfig load_config_file(const std::string& path);

LoadedConfig parse_config_text(const std::string& text, const std::string& origin = "<inline>");

// Serializes the resolved configuration back out (provenance snapshot written
// next to run outputs).
std::string config_to_json(const LoadedConfig& config);

}  // namespace metro
