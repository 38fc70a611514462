// errors.hpp — status codes and the exception used inside the core.
//
// Core code throws qbatt::error; the C API boundary catches it and maps to
// qb_status. The numeric values match the public enum one-to-one.

#pragma once

#include <stdexcept>
#include <string>

namespace qbatt {

enum class status : int {
  ok = 0,
  invalid_argument = 1,
  dimension_cap = 2,
  non_charging = 3,
  zero_steps = 4,
  invalid_state = 5,
  numerical = 6,
  io = 7,
  null_pointer = 8,
  unknown_key = 9,
};

class error : public std::runtime_error {
 public:
  error(status s, const std::string& what)
      : std::runtime_error(what), code_(s) {}
  status code() const { return code_; }

 private:
  status code_;
};

[[noreturn]] inline void fail(status s, const std::string& what) {
  throw error(s, what);
}

}  // namespace qbatt
