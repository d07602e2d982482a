#ifndef VAL_ERRORS_HPP
#define VAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace val {

/// Invalid parameter or configuration value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension or size mismatch between inputs.
class ShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A label query would exceed the oracle budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unparseable input data. Carries the 1-based row where parsing failed
/// (0 when no specific row applies).
class MalformedInput : public std::runtime_error {
 public:
  MalformedInput(const std::string& what, long row)
      : std::runtime_error(what + " (row " + std::to_string(row) + ")"),
        row_(row) {}
  long row() const { return row_; }

 private:
  long row_;
};

}  // namespace val

#endif  // VAL_ERRORS_HPP
