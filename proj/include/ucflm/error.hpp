#ifndef UCFLM_ERROR_HPP
#define UCFLM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ucflm {

// Bad or inconsistent input data (file contents, dimensions, empty corpora).
// CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure (divergence, non-finite values). CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ucflm

#endif  // UCFLM_ERROR_HPP
