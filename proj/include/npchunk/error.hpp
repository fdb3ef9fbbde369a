#ifndef NPCHUNK_ERROR_HPP_
#define NPCHUNK_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace npchunk {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed column-format input. line() is 1-based, 0 when unknown.
class FormatError : public Error {
 public:
  FormatError(const std::string &message, std::size_t line)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Inputs that violate an operation's precondition (mismatched lengths,
// empty training data, out-of-range parameters).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Errors in experiment configuration files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace npchunk

#endif  // NPCHUNK_ERROR_HPP_
