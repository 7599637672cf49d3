#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace coarsedim {

enum class ErrorCode {
  DimensionMismatch,
  Parameter,
  Capacity,
  Schema,
  Unsupported,
  InvalidInput,
  Io,
  Internal,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

// Global work/point budget for brute-force paths. Overridable via the
// COARSEDIM_CAP environment variable (read once per process).
std::uint64_t capacity_limit();

}  // namespace coarsedim
