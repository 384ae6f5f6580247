#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qasa {

// Problem or state too large for exhaustive treatment.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. row() is 1-based; 0 when no row applies.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& message, std::size_t row)
      : std::runtime_error(row == 0 ? message : "row " + std::to_string(row) + ": " + message),
        row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

// Two configurations with (numerically) equal energy carry no temperature
// information.
class DegeneratePairError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No usable pair was found when fitting an inverse temperature.
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qasa
