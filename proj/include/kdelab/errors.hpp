#pragma once

#include <stdexcept>
#include <string>

namespace kdelab {

// Thrown when an argument violates a documented mathematical domain
// (x outside [0,1], repeated interpolation nodes, infeasible spec, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

// Big-float elimination hit a pivot below the configured magnitude floor.
class PivotUnderflowError : public std::runtime_error {
 public:
  explicit PivotUnderflowError(const std::string& what) : std::runtime_error(what) {}
};

// A recovered count sits too far from every integer: the oracle broke its
// error contract or tau was underestimated.
class RoundingAmbiguousError : public std::runtime_error {
 public:
  RoundingAmbiguousError(std::size_t row, std::size_t col, const std::string& distance)
      : std::runtime_error("rounding ambiguous at entry (" + std::to_string(row) + ", " +
                           std::to_string(col) + "), distance to nearest integer " + distance),
        row_(row),
        col_(col) {}
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

// The single-call threshold reduction needs n*f((p+1)/m) < f(p/m).
class RapidDecayViolatedError : public std::runtime_error {
 public:
  explicit RapidDecayViolatedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kdelab
