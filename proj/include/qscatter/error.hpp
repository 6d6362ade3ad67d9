#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace qscatter {

/// Numeric domain violation (non-positive Bessel argument, zero-norm inverse,
/// singular matching denominator, ...). Optionally names the partial wave.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what, std::optional<int> ell = std::nullopt)
      : std::domain_error(ell ? what + " (ell=" + std::to_string(*ell) + ")" : what), ell_(ell) {}

  std::optional<int> ell() const noexcept { return ell_; }

 private:
  std::optional<int> ell_;
};

/// A matching formula hit a vanishing denominator.
class SingularMatching : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Hard-sphere channel with |y_l(kR)| < 1: sin(Theta) = 1/y_l has no real solution.
class SaturatedMode : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed model specification or CSV input, with a 1-based position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace qscatter
