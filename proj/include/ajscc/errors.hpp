#ifndef AJSCC_ERRORS_HPP
#define AJSCC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ajscc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sensor or normalized value fell outside its legal interval.
class RangeError : public Error {
 public:
  RangeError(std::string field, double value, double lo, double hi)
      : Error(field + "=" + std::to_string(value) + " outside [" + std::to_string(lo) + ", " +
              std::to_string(hi) + "]"),
        field_(std::move(field)),
        lo_(lo),
        hi_(hi) {}

  const std::string& field() const noexcept { return field_; }
  double lower() const noexcept { return lo_; }
  double upper() const noexcept { return hi_; }

 private:
  std::string field_;
  double lo_;
  double hi_;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Non-finite or otherwise unusable input value.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ajscc

#endif  // AJSCC_ERRORS_HPP
