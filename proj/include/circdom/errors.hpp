#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace circdom {

// Input/invariant violations map to CLI exit 2, numerical failures to exit 3.
enum class ErrorKind { Validation, Numerical };

// Every failure carries a stable machine-parsable name ("HoleOverlap",
// "TruncationFailure", ...) next to the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what),
        kind_(kind),
        name_(std::move(name)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

 private:
  ErrorKind kind_;
  std::string name_;
};

[[noreturn]] inline void fail_validation(std::string name, const std::string& what) {
  throw Error(ErrorKind::Validation, std::move(name), what);
}

[[noreturn]] inline void fail_numerical(std::string name, const std::string& what) {
  throw Error(ErrorKind::Numerical, std::move(name), what);
}

}  // namespace circdom
