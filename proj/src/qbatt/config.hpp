// config.hpp — flat key = value scenario configuration.
//
// Grammar: one `key = value` per line; blank lines and lines starting with
// `#` (after leading whitespace) are ignored; inline `#` starts a comment.
// Unknown keys and duplicate keys are rejected.

#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace qbatt {

class config {
 public:
  config() = default;
  static config from_file(const std::string& path);
  static config from_string(const std::string& text);

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;

  const std::map<std::string, std::string>& entries() const {
    return entries_;
  }

  static bool known_key(const std::string& key);

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace qbatt
