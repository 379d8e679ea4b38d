#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace pascal_adic {

// Domain errors carry a stable machine-readable code ("MaximalPath",
// "NotInLanguage", ...) next to the human-readable message. The CLI prints
// the code on stderr and exits 1; tests match on it.
class DomainError : public std::runtime_error {
public:
  DomainError(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& what) {
  throw DomainError(std::move(code), what);
}

}  // namespace pascal_adic
