#pragma once

// Fan files (TOML) and the built-in example fans.
//
//   [fan]     dim = n, rays = [[...], ...], max_cones = [[1-based indices], ...]
//   [basis]   divisor_matrix = [[...], ...]   (optional)
//   [options] order = N                        (optional)

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "toric_mirror/fan.hpp"

namespace toric {

class FanParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FanSpec {
  std::string name;
  Fan fan;
  std::optional<IntMatrix> divisor_matrix;
  std::optional<int> order;
};

/// Parses and structurally checks a fan; geometric gates are left to ToricManifold::create.
FanSpec parse_fan_toml(std::string_view text, const std::string& source = "<input>");
FanSpec load_fan_file(const std::string& path);
std::string to_toml(const FanSpec& spec);

const std::vector<std::string>& builtin_names();
std::optional<FanSpec> builtin_fan(const std::string& name);

/// A built-in name, otherwise a path to a TOML file.
FanSpec resolve_fan(const std::string& source);

/// SHA-256 (hex) of the canonical fan and divisor-matrix description.
std::string fan_hash(const ToricManifold& x);

}  // namespace toric
