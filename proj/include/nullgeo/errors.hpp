#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nullgeo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position` is the 0-based character offset.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class UnknownSymbolError : public Error {
public:
    explicit UnknownSymbolError(std::string symbol)
        : Error("unknown symbol '" + symbol + "'"), symbol_(std::move(symbol)) {}

    const std::string& symbol() const noexcept { return symbol_; }

private:
    std::string symbol_;
};

/// Evaluation left the real domain of an expression (division by zero, log of a
/// non-positive number, ...) or a point fell outside a metric's domain guard.
class DomainError : public Error {
public:
    using Error::Error;
};

class DegenerateMetricError : public Error {
public:
    using Error::Error;
};

class SignatureError : public Error {
public:
    using Error::Error;
};

class DegenerateFrameError : public Error {
public:
    using Error::Error;
};

class FrameInconsistencyError : public Error {
public:
    using Error::Error;
};

class SurfaceError : public Error {
public:
    using Error::Error;
};

class CatalogError : public Error {
public:
    using Error::Error;
};

}  // namespace nullgeo
