#include "coarsedim/errors.hpp"

#include <cstdlib>

namespace coarsedim {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::Parameter: return "parameter";
    case ErrorCode::Capacity: return "capacity";
    case ErrorCode::Schema: return "schema";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::InvalidInput: return "invalid_input";
    case ErrorCode::Io: return "io";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

std::uint64_t capacity_limit() {
  static const std::uint64_t limit = [] {
    if (const char* env = std::getenv("COARSEDIM_CAP")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{8'000'000};
  }();
  return limit;
}

}  // namespace coarsedim
