#pragma once

#include <stdexcept>
#include <string>

namespace nerve {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input data that cannot describe a valid object (duplicate vertex in a
/// simplex, unknown vertex name, non-closed face list, ...).
class MalformedInput : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A built-in construction produced data that failed its own consistency
/// checks. Always indicates a bug.
class ConstructionError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::string source, std::size_t line, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ": " + what),
          source_(std::move(source)),
          line_(line) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

} // namespace nerve
