#pragma once

#include <stdexcept>
#include <string>

namespace metadisc {

enum class ErrorKind {
  InvalidArgument,
  Parse,
  Validation,
  Io,
  NotFound,
  State,
};

// Every failure raised by the core carries one of these kinds; the C API maps
// them one-to-one onto status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace metadisc
