#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sparseclust {

// Error taxonomy shared by the library, the C API and the CLI exit codes:
// validation = bad arguments or malformed input, io = file-system trouble,
// degenerate = a numerically meaningless request (e.g. log of a zero spread).
enum class ErrorKind { validation = 2, io = 3, degenerate = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  static Error validation(std::string message) {
    return Error(ErrorKind::validation, std::move(message));
  }
  static Error io(std::string message) {
    return Error(ErrorKind::io, std::move(message));
  }
  static Error degenerate(std::string message) {
    return Error(ErrorKind::degenerate, std::move(message));
  }

 private:
  ErrorKind kind_;
};

}  // namespace sparseclust
