#include "heis/core/error.hpp"

namespace heis {

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::validation:
    case ErrorKind::overflow:
      return 2;
    case ErrorKind::resource:
      return 3;
    case ErrorKind::non_convergence:
      return 4;
    case ErrorKind::solver:
      return 1;
  }
  return 1;
}

const char* kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::resource: return "resource";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::solver: return "solver";
  }
  return "unknown";
}

}  // namespace heis
