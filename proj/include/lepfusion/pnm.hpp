#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "lepfusion/image.hpp"

namespace lepfusion {

enum class PnmFormat {
    pgm_binary,  // P5, single channel
    ppm_binary,  // P6, three channels
};

/// Decodes P2/P3/P5/P6 data with maxval <= 255.
///
/// Throws UnsupportedFormat for any other magic number or a 16-bit maxval and
/// ParseError (carrying the byte offset) for malformed or truncated data.
Image decode_pnm(std::string_view bytes);

/// Reads a netpbm file from disk. Throws IoError when it cannot be opened.
Image read_image(const std::filesystem::path& path);

/// Clamps to [0, max_val] and rounds half-up; max_val must round to 1..255.
std::string encode_pnm(const Image& img, PnmFormat format);

/// Writes the binary encoding. Throws InvalidArgument on a channel/format
/// mismatch and IoError when the file cannot be written.
void write_image(const Image& img, const std::filesystem::path& path, PnmFormat format);

/// Quantized value that write_image stores for `value`.
std::uint8_t quantize_sample(double value, int max_val) noexcept;

/// P5 for single-channel images, P6 for colour.
PnmFormat default_format(const Image& img) noexcept;

}  // namespace lepfusion
