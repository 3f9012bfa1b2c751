#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace toric::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_internal = 1,
  exit_parse = 2,
  exit_gate = 3,
  exit_identity = 4,
};

/// `order_env` is the value of ORDER, if set. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& order_env = std::nullopt);

}  // namespace toric::cli
