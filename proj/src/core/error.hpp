#pragma once

#include <stdexcept>
#include <string>

namespace kdm {

enum class ErrorCode {
    invalid_argument,
    parse,
    io,
    unknown_policy,
    pole,
    check_failed,
    internal,
};

// Single exception type for the library; the C API maps `code` onto its
// status enum, the CLI onto exit codes.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace kdm
