#pragma once

#include <stdexcept>
#include <string>

#include "vrsim/agents/agent_config.hpp"
#include "vrsim/env/config.hpp"

namespace vrsim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  EnvConfig env;
  AgentConfig agent;
};

/// Parses a flat key=value file ('#' comments, blank lines allowed) on top of
/// the defaults. Unknown keys and malformed numbers raise ConfigError naming
/// the key / line number.
RunConfig load_config(const std::string& path);

/// Applies a single "key=value" assignment (shared by the file parser and
/// tests). line_no only decorates error messages.
void apply_config_key(RunConfig& config, const std::string& key,
                      const std::string& value, int line_no = 0);

/// Every effective key, one "key=value" per line, in documented order.
std::string dump_config(const RunConfig& config);

}  // namespace vrsim
