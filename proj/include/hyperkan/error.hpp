#pragma once

#include <stdexcept>
#include <string>

namespace hyperkan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define HYPERKAN_DEFINE_ERROR(Name)        \
    class Name : public Error {            \
    public:                                \
        using Error::Error;                \
    }

// hypergraph-core
HYPERKAN_DEFINE_ERROR(EmptyHyperedge);
HYPERKAN_DEFINE_ERROR(VertexIndexOutOfRange);
HYPERKAN_DEFINE_ERROR(DimensionMismatch);
HYPERKAN_DEFINE_ERROR(InvalidHopCount);
HYPERKAN_DEFINE_ERROR(CountOverflow);

// feature-extraction / adjustment / kan
HYPERKAN_DEFINE_ERROR(InvalidFeatures);
HYPERKAN_DEFINE_ERROR(InvalidConfig);
HYPERKAN_DEFINE_ERROR(StaleForwardCache);

// training
HYPERKAN_DEFINE_ERROR(TooFewVertices);
HYPERKAN_DEFINE_ERROR(EmptySubset);
HYPERKAN_DEFINE_ERROR(ShapeMismatch);

// io
HYPERKAN_DEFINE_ERROR(HeaderMismatch);
HYPERKAN_DEFINE_ERROR(LabelOutOfRange);
HYPERKAN_DEFINE_ERROR(IoError);
HYPERKAN_DEFINE_ERROR(UsageError);

#undef HYPERKAN_DEFINE_ERROR

/// Malformed text input. Carries the 1-based line and column of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                message),
          message_(message),
          line_(line),
          column_(column) {}

    const std::string& message() const noexcept { return message_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

}  // namespace hyperkan
