#pragma once

#include <stdexcept>
#include <string>

namespace pmsched {

// Base of every error raised by the library. The CLI maps subclasses onto
// process exit codes (see cli.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

// T is smaller than some processing time.
class InfeasibleHorizonError : public Error {
 public:
  using Error::Error;
};

// a_j > b_j after clamping.
class InfeasibleWindowError : public Error {
 public:
  InfeasibleWindowError(int job, const std::string& what)
      : Error(what), job_(job) {}
  int job() const noexcept { return job_; }

 private:
  int job_;
};

// A schedule uses a start time that has no variable/arc in the target model.
class MappingError : public Error {
 public:
  using Error::Error;
};

class UnsupportedFormatError : public Error {
 public:
  using Error::Error;
};

class SizeGuardError : public Error {
 public:
  using Error::Error;
};

class ExternalSolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace pmsched
