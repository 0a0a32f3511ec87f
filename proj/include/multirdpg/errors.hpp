#ifndef MULTIRDPG_ERRORS_HPP
#define MULTIRDPG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace multirdpg {

// Malformed or inconsistent input data (bad edge lists, mismatched sizes).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parse failure in a text input; carries the 1-based line number.
class ParseError : public DataError {
 public:
  ParseError(int line, const std::string& msg)
      : DataError("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Numerical preconditions violated (probabilities outside [0,1], ...).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace multirdpg

#endif  // MULTIRDPG_ERRORS_HPP
