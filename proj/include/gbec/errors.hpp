#pragma once

#include <stdexcept>
#include <string>

namespace gbec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain error: " + what) {}
};

/// A Bose series was requested at a point where it diverges (alpha = 0, order <= 1).
class DivergentSeries : public Error {
 public:
  explicit DivergentSeries(const std::string& what) : Error("divergent series: " + what) {}
};

/// A root-finding problem has no solution for the given input.
class NoSolution : public Error {
 public:
  explicit NoSolution(const std::string& what) : Error("no solution: " + what) {}
};

/// An iteration exhausted its budget. `last_iterate` holds the final value.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double last_iterate)
      : Error("non-convergence: " + what), last_iterate_(last_iterate) {}
  double last_iterate() const noexcept { return last_iterate_; }

 private:
  double last_iterate_;
};

/// Not enough points to fit a scaling exponent.
class InsufficientData : public Error {
 public:
  explicit InsufficientData(const std::string& what) : Error("insufficient data: " + what) {}
};

/// Box exponents violate ordering or the unit-sum constraint.
class InvalidExponents : public Error {
 public:
  explicit InvalidExponents(const std::string& what) : Error("invalid exponents: " + what) {}
};

/// The enumerated spectrum leaves too much weight in the tail.
class CutoffTooTight : public Error {
 public:
  explicit CutoffTooTight(const std::string& what) : Error("cutoff too tight: " + what) {}
};

/// A root was not bracketed by the supplied interval.
class BracketFailure : public Error {
 public:
  explicit BracketFailure(const std::string& what) : Error("bracket failure: " + what) {}
};

}  // namespace gbec
