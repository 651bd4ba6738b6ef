#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace convexsec {

/// Invalid user input: malformed curve specs, expressions, or options.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Expression syntax error; `offset` is the byte position in the source text.
class ParseError : public SpecError {
public:
    ParseError(const std::string& what, std::size_t offset)
        : SpecError(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Numerical or geometric failure: domain violations, non-convexity,
/// root-finding or quadrature that does not converge.
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace convexsec
