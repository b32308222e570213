#pragma once

#include <stdexcept>
#include <string>

namespace pfopt {

/// Bad input: mismatched dimensions, malformed files, out-of-range indices.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SequenceTooShort : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IndexOutOfRange : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Failures of the numerical pipeline on otherwise well-formed input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A size guard (term count, basis size) tripped.
class LimitExceeded : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The right-hand matrix of a pencil is not positive definite within
/// tolerance. `usable_order` is the largest leading block order that passed,
/// so the largest usable relaxation order is `usable_order - 1`.
class NotPositiveDefinite : public NumericalError {
 public:
  NotPositiveDefinite(const std::string& what, int usable_order)
      : NumericalError(what), usable_order_(usable_order) {}
  int usable_order() const noexcept { return usable_order_; }

 private:
  int usable_order_;
};

/// Requested relaxation order exceeds the rank of the moment sequence
/// (atomic pushforward measure).
class RankDeficient : public NumericalError {
 public:
  RankDeficient(const std::string& what, int max_valid_r)
      : NumericalError(what), max_valid_r_(max_valid_r) {}
  int max_valid_r() const noexcept { return max_valid_r_; }

 private:
  int max_valid_r_;
};

/// A Hankel pivot went negative before any zero pivot: the numbers are not
/// the moments of any measure.
class InvalidMomentSequence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace pfopt
