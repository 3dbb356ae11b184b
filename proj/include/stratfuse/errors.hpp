#pragma once

#include <stdexcept>
#include <string>

namespace stratfuse {

// Base class for all library errors. The CLI maps these to a nonzero
// exit code with the message on stderr.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid or inconsistent configuration (bad grid, overlapping spawns,
// flag off its own territory, bad optimizer knobs, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A policy asked for a macro-action whose initiation rule does not hold.
class EligibilityError : public Error {
 public:
  EligibilityError(int robot, const std::string& macro_name)
      : Error("robot " + std::to_string(robot) +
              " chose ineligible macro-action '" + macro_name + "'"),
        robot_(robot),
        macro_name_(macro_name) {}

  int robot() const { return robot_; }
  const std::string& macro_name() const { return macro_name_; }

 private:
  int robot_;
  std::string macro_name_;
};

// Simulator misuse (stepping a terminal state, unknown robot id, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace stratfuse
