#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coenroll {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed enrollment or config input. Carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class EmptyDatasetError : public Error {
public:
    using Error::Error;
};

class TaxonomyError : public Error {
public:
    using Error::Error;
};

/// A metric whose formula is undefined on the given input (e.g. l_G on one node).
class UndefinedMetricError : public Error {
public:
    using Error::Error;
};

/// The requested operation cannot be carried out with the given parameters.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace coenroll
