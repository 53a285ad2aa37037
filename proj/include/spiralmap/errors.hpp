#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace spiralmap {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  DegenerateProjection,
  BracketInvalid,
  NearestPropertyViolated,
  CorollaryViolated,
  TieEncountered,
  Schema,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library. `index()` carries the sequence or
// iteration index the failure refers to, when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace spiralmap
