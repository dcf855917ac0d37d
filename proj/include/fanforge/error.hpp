#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fanforge {

enum class error_kind {
  out_of_domain,
  domain_mismatch,
  invalid_coordinate,
  degenerate_pair,
  level_violation,
  syntax_error,
  invalid_bounds,
  point_not_in_truncation,
  not_a_fan_point,
  level_mismatch,
  bad_level,
  invalid_offsets,
  spoke_too_small,
  budget_too_small,
  invalid_argument,
};

std::string_view to_string(error_kind kind);

// Every recoverable failure in the library is reported as an `error` carrying
// its kind, so front ends can map kinds to exit codes.
class error : public std::runtime_error {
 public:
  error(error_kind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  error_kind kind() const noexcept { return kind_; }

 private:
  error_kind kind_;
};

class syntax_error : public error {
 public:
  syntax_error(std::size_t position, const std::string& message)
      : error(error_kind::syntax_error,
              message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace fanforge
