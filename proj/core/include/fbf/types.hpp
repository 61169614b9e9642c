#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace fbf {

/// A point of the (finite-dimensional) Hilbert space R^n.
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite coordinates or a dimension mismatch.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter outside its admissible range (gamma, h, tolerances...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Operator, schedule or problem construction rejected its parameters.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// A record is too short or otherwise unusable for the requested query.
class RecordError : public Error {
 public:
  using Error::Error;
};

/// The state left the finite region while integrating or iterating.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double last_good_time)
      : Error(what), last_good_time_(last_good_time) {}

  /// Time (or iteration index) of the last finite state.
  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

inline void require_finite(const Vector& x, const char* what) {
  if (!x.allFinite()) {
    throw InvalidStateError(std::string(what) + ": non-finite coordinates");
  }
}

inline void require_dimension(const Vector& x, Eigen::Index n, const char* what) {
  if (x.size() != n) {
    throw InvalidStateError(std::string(what) + ": expected dimension " + std::to_string(n) +
                            ", got " + std::to_string(x.size()));
  }
}

}  // namespace fbf
