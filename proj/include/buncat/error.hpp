#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace buncat {

/// Thrown on precondition violations and malformed inputs. `code()` is a
/// stable machine-readable tag such as "PartialProjection" or "NotComposable";
/// what() prepends the code to a human-readable explanation.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& detail) {
  throw Error(std::move(code), detail);
}

}  // namespace buncat
