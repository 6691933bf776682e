#pragma once
// Error taxonomy shared by the whole library. The C layer maps codes to the
// integers in include/etendue.h; the CLI maps them to exit codes.

#include <stdexcept>
#include <string>

namespace etendue {

enum class ErrorCode {
  malformed_input,
  axiom_violation,
  unknown_name,
  budget_exceeded,
  parent_mismatch,
  not_natural,
  hypothesis_failed,
  incompatible_base,
  parse_error,
  theorem_violation,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

// Invariant that should be unreachable; a throw here is a library bug.
inline void internal_check(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::internal, std::string("internal invariant failed: ") + what);
}

}  // namespace etendue
