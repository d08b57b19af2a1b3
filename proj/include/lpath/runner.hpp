#pragma once

// Batch commands driven by a single JSON configuration document.

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lpath {

enum RunStatus : int { run_ok = 0, run_internal = 1, run_config = 2, run_verify = 3, run_budget = 4 };

struct RunResult {
  int status = run_ok;
  std::string error;
  std::string report;    ///< JSON document
  std::string resolved;  ///< the configuration with every default filled in
  std::map<std::string, std::string> artifacts;  ///< file name -> contents
};

const std::vector<std::string>& command_names();

/// Never throws; failures are reported through status and error.
RunResult run_command(std::string_view command, std::string_view config_json);

}  // namespace lpath
