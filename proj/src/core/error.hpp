#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sewerplace {

enum class ErrorKind {
  invalid_argument,  // bad parameters or ids
  parse,             // malformed input file
  validation,        // network violates the in-tree model
  io,                // file system failure
  cap_exceeded,      // combinatorial or budget cap hit
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace sewerplace
