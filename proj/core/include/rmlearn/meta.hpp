#pragma once

#include <map>
#include <string>

namespace rmlearn {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a over the sorted key=value pairs, rendered as 16 hex digits. Run
// artifacts carry this so outputs can be traced back to their settings.
std::string config_hash(const std::map<std::string, std::string>& kv);

}  // namespace rmlearn
