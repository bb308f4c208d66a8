#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weilad {

/// Error categories shared by the C++ core and the C API (see weilad.h).
enum class ErrorCode : int {
  ok = 0,
  bad_parameter = 1,
  infinite_dimension = 2,
  duplicate_generator = 3,
  not_well_defined = 4,
  augmentation_violation = 5,
  source_target_mismatch = 6,
  algebra_mismatch = 7,
  scalar_mode_mismatch = 8,
  not_a_unit = 9,
  domain_error = 10,
  unsupported_in_rational_mode = 11,
  parse_error = 12,
  unknown_function = 13,
  unknown_variable = 14,
  size_limit = 15,
  non_natural = 16,
  unavailable_in_model = 17,
  invalid_instance = 18,
  io_error = 19,
  internal = 99,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse errors carry the 1-based character position of the failure.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(ErrorCode::parse_error,
              message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace weilad
