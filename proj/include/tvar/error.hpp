#pragma once

#include <stdexcept>
#include <string>

namespace tvar {

/// Failure categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
  Domain = 1,
  Dimension = 2,
  SingularDesign = 3,
  UpdcViolation = 4,
  Config = 5,
  Parse = 6,
  Data = 7,
  Unsupported = 8,
  Io = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace tvar
