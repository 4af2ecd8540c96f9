#pragma once

#include <stdexcept>
#include <string>

namespace lptk {

// Base class for every error the library throws. Subclasses name the failure
// class so the CLI can map them onto stable exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid physical parameters, grids, or argument combinations.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed input text. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg, long line = 0)
      : Error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_ = 0;
};

// A fit failed to converge or could not be set up.
class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace lptk
