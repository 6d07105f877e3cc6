#include "rmlearn/meta.hpp"

#include <cstdint>
#include <cstdio>

namespace rmlearn {

std::string config_hash(const std::map<std::string, std::string>& kv) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](const std::string& s) {
    for (const unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0x1e;  // separator so "ab"+"c" differs from "a"+"bc"
    h *= 0x100000001b3ULL;
  };
  for (const auto& [k, v] : kv) {
    mix(k);
    mix(v);
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rmlearn
