#pragma once

#include <stdexcept>
#include <string>

namespace heis {

enum class ErrorKind {
  validation,
  overflow,
  resource,
  non_convergence,
  solver,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorKind::validation, what);
}

/// Process exit code used by the CLI for each error kind.
int exit_code(ErrorKind kind) noexcept;

const char* kind_name(ErrorKind kind) noexcept;

}  // namespace heis
