#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gabp {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// Operand shapes do not agree (vector lengths, matrix orders, block widths).
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A value that must be finite (or otherwise in-range) is not.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Symmetric factorization hit a nonpositive pivot: the matrix is not PD.
class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

/// A message denominator became exactly zero during belief propagation.
/// Carries the ordered node pair of the offending message.
class ZeroPivot : public Error {
public:
    ZeroPivot(std::size_t from, std::size_t to, const std::string& context)
        : Error("zero pivot on message " + std::to_string(from) + " -> " +
                std::to_string(to) + ": " + context),
          from_(from),
          to_(to) {}

    std::size_t from() const { return from_; }
    std::size_t to() const { return to_; }

private:
    std::size_t from_;
    std::size_t to_;
};

/// A classification label is outside {-1, +1}.
class InvalidLabel : public Error {
public:
    using Error::Error;
};

/// Worker count does not fit the row count (p < 1 or p > n).
class InvalidPartition : public Error {
public:
    using Error::Error;
};

/// Malformed input text; carries the 1-based line (and column when known).
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " +
                std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_ = 0;
    std::size_t column_ = 0;
};

/// libsvm feature indices must be 1-based and strictly increasing per line.
class NonMonotonicIndex : public ParseError {
public:
    using ParseError::ParseError;
};

/// CSV rows must all have the same number of cells.
class RaggedRows : public ParseError {
public:
    using ParseError::ParseError;
};

}  // namespace gabp
