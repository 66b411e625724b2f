// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace eulerprod {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
 public:
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

/// Result not representable (overflow of the exponent range).
class range_error : public std::range_error {
 public:
  explicit range_error(const std::string& what) : std::range_error(what) {}
};

/// Requested precision is too low to produce a trustworthy value; carries the
/// minimum number of bits that would be accepted.
class precision_error : public std::runtime_error {
 public:
  precision_error(const std::string& what, long required_bits)
      : std::runtime_error(what), required_bits_(required_bits) {}
  long required_bits() const { return required_bits_; }

 private:
  long required_bits_;
};

/// An iterative scheme hit its refinement floor or iteration cap before
/// reaching the requested tolerance. The best value found so far and the
/// corresponding error estimate are attached.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double partial_value,
                    double err_estimate)
      : std::runtime_error(what),
        partial_value_(partial_value),
        err_estimate_(err_estimate) {}
  double partial_value() const { return partial_value_; }
  double err_estimate() const { return err_estimate_; }

 private:
  double partial_value_;
  double err_estimate_;
};

/// Parameters do not have the structural form an operation requires.
class shape_error : public std::invalid_argument {
 public:
  explicit shape_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Parameters have the right shape but violate a validity condition.
class validity_error : public std::invalid_argument {
 public:
  explicit validity_error(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace eulerprod
