#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace moore {

/// Root of every exception the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidShape : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class BadIndex : public Error {
 public:
  using Error::Error;
};

class UnknownLaw : public Error {
 public:
  using Error::Error;
};

/// Malformed cube files, unsupported serialization (native actions), bad config.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Raised when a ∘_j b is undefined: the shared face differs in shape or action.
class CompositionUndefined : public Error {
 public:
  enum class Reason { shape, action };

  struct Details {
    Reason reason = Reason::shape;
    std::size_t direction = 0;
    std::vector<double> left_extents;
    std::vector<double> right_extents;
    // Set for Reason::action: first maximal-distance point on the shared face.
    std::vector<double> witness_point;
    std::vector<double> left_value;
    std::vector<double> right_value;
    double distance = 0.0;
    // Set by grid composition: coordinates of the left cell of the failing pair.
    std::optional<std::vector<std::size_t>> grid_position;
  };

  CompositionUndefined(std::string what, Details details)
      : Error(std::move(what)), details_(std::move(details)) {}

  const Details& details() const noexcept { return details_; }

 private:
  Details details_;
};

/// Syntax errors in the action DSL. `offset` is a byte offset into the source.
class ParseError : public Error {
 public:
  ParseError(std::string what, std::size_t offset, std::vector<std::string> expected)
      : Error(std::move(what)), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Runtime evaluation failure; [begin, end) is the offending subexpression.
class EvalError : public Error {
 public:
  EvalError(std::string what, std::size_t begin, std::size_t end)
      : Error(std::move(what)), begin_(begin), end_(end) {}

  std::size_t begin() const noexcept { return begin_; }
  std::size_t end() const noexcept { return end_; }

 private:
  std::size_t begin_;
  std::size_t end_;
};

}  // namespace moore
