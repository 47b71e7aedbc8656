#ifndef UDW_CONFIG_HPP
#define UDW_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "udw/model.hpp"

namespace udw {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses the sectioned key=value scenario format (see README for keys).
// Throws ConfigError on syntax errors, unknown sections or unknown keys.
// Values are stored as written; call normalized() for R = 1 units.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

// Inverse of parse_config up to formatting; doubles are written with 17
// significant digits so parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const ScenarioConfig& cfg);

bool same_config(const ScenarioConfig& a, const ScenarioConfig& b);

}  // namespace udw

#endif
