#pragma once

#include <stdexcept>
#include <string>

namespace gfbbm {

enum class ErrorCode {
  invalid_argument,
  inadmissible_params,
  divergence,
  degenerate_denominator,
  symmetry_violation,
  io_error,
};

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace gfbbm
