#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lepfusion {

// Bad dimensions, parameters, channel counts or mismatched inputs.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A region or coordinate falls outside an image.
class BoundsError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed netpbm data. `offset` is the byte position where decoding failed.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnsupportedFormat : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lepfusion
