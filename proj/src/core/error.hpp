#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace polar {

// Error taxonomy mirrored by the C API status codes and the CLI exit codes.
enum class errc {
  invalid_argument,      // rejected input (dimension mismatch, bad parameters, ...)
  parse_error,           // malformed file contents
  io_error,              // filesystem failure
  construction_failure,  // a construction could not meet its certified bounds
  internal_error,        // an invariant the theory guarantees was breached
};

class error : public std::runtime_error {
public:
  error(errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) {
  throw error(code, msg);
}

inline void require(bool cond, errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace polar
