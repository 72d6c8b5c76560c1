#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace pinchcert {

// Base class for every failure raised by the library. The CLI maps these to
// exit codes; library callers can catch the specific subclass they care about.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (non-positive
// length, NaN, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

// The requested hyperbolic configuration does not exist (e.g. a right-angled
// pentagon with sinh(a)·sinh(b) < 1).
class GeometryError : public Error {
  public:
    using Error::Error;
};

// Caller violated an operation's contract (mismatched arities, i >= j, ...).
class UsageError : public Error {
  public:
    using Error::Error;
};

// Invalid user-supplied data (partitions, configs, germs).
class ValidationError : public Error {
  public:
    using Error::Error;
};

// A value left the range where double arithmetic stays meaningful.
class PrecisionError : public Error {
  public:
    PrecisionError(const std::string& what, double offending, std::optional<int> index = {},
                   std::optional<long long> m = {})
        : Error(what), offending_(offending), index_(index), m_(m) {}

    double offending() const noexcept { return offending_; }
    std::optional<int> index() const noexcept { return index_; }
    std::optional<long long> m() const noexcept { return m_; }

  private:
    double offending_;
    std::optional<int> index_;
    std::optional<long long> m_;
};

// A Thurston-regime estimate was requested outside its hypothesis
// ℓ_Y(α) <= ε. Carries the smallest sequence index m that would be admissible.
class RegimeError : public Error {
  public:
    RegimeError(const std::string& what, std::optional<long long> smallest_admissible_m = {})
        : Error(what), smallest_m_(smallest_admissible_m) {}

    std::optional<long long> smallest_admissible_m() const noexcept { return smallest_m_; }

  private:
    std::optional<long long> smallest_m_;
};

// Cauchy-envelope geometric factor undefined: some |t_k| >= r.
class DivergenceError : public Error {
  public:
    DivergenceError(const std::string& what, int index) : Error(what), index_(index) {}
    int index() const noexcept { return index_; }

  private:
    int index_;
};

// A germ with no stored monomials.
class DegenerateGermError : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    ParseError(const std::string& message, int line, int column, std::string token)
        : Error(message), message_(message), line_(line), column_(column), token_(std::move(token)) {}

    const std::string& message() const noexcept { return message_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& token() const noexcept { return token_; }

  private:
    std::string message_;
    int line_;
    int column_;
    std::string token_;
};

}  // namespace pinchcert
