#include "lepfusion/pnm.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <system_error>

namespace lepfusion {

namespace {

bool is_space(char ch) {
    return std::isspace(static_cast<unsigned char>(ch)) != 0;
}

bool is_digit(char ch) {
    return std::isdigit(static_cast<unsigned char>(ch)) != 0;
}

// Tokenizer over netpbm header and plain-format raster text.
class Cursor {
public:
    Cursor(std::string_view bytes, std::size_t pos) : bytes_(bytes), pos_(pos) {}

    std::size_t pos() const noexcept { return pos_; }
    bool at_end() const noexcept { return pos_ >= bytes_.size(); }

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else if (is_space(bytes_[pos_])) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    // Returns false at end of data; throws on anything that is not a decimal integer.
    bool next_uint(long& value, const char* field) {
        skip_space_and_comments();
        if (at_end()) return false;
        const std::size_t start = pos_;
        value = 0;
        while (pos_ < bytes_.size() && is_digit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000'000L) throw ParseError(std::string(field) + " is too large", start);
            ++pos_;
        }
        if (pos_ == start) throw ParseError(std::string("expected a number for ") + field, start);
        if (!at_end() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#') {
            throw ParseError(std::string("unexpected character after ") + field, pos_);
        }
        return true;
    }

    long require_uint(const char* field) {
        long value = 0;
        if (!next_uint(value, field)) {
            throw ParseError(std::string("unexpected end of data while reading ") + field, pos_);
        }
        return value;
    }

    // Exactly one whitespace byte separates the header from binary raster data.
    void expect_single_space() {
        if (at_end() || !is_space(bytes_[pos_])) throw ParseError("missing whitespace before raster data", pos_);
        ++pos_;
    }

private:
    std::string_view bytes_;
    std::size_t pos_;
};

std::string count_message(std::size_t expected, std::size_t received) {
    return "truncated raster: expected " + std::to_string(expected) + " samples, received " +
           std::to_string(received);
}

int checked_max_val(const Image& img) {
    const long mv = std::lround(img.max_val());
    if (mv < 1 || mv > 255) {
        throw InvalidArgument("netpbm output needs max_val in 1..255, got " + std::to_string(img.max_val()));
    }
    return static_cast<int>(mv);
}

}  // namespace

std::uint8_t quantize_sample(double value, int max_val) noexcept {
    if (!(value > 0.0)) return 0;  // also maps NaN to 0
    if (value >= max_val) return static_cast<std::uint8_t>(max_val);
    return static_cast<std::uint8_t>(std::floor(value + 0.5));
}

PnmFormat default_format(const Image& img) noexcept {
    return img.channels() == 3 ? PnmFormat::ppm_binary : PnmFormat::pgm_binary;
}

Image decode_pnm(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P') throw UnsupportedFormat("not a netpbm file (missing 'P' magic)");
    const char kind = bytes[1];
    if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
        throw UnsupportedFormat(std::string("unsupported netpbm magic P") + kind);
    }
    const bool plain = kind == '2' || kind == '3';
    const int channels = (kind == '3' || kind == '6') ? 3 : 1;
    if (bytes.size() > 2 && !is_space(bytes[2]) && bytes[2] != '#') {
        throw ParseError("magic number must be followed by whitespace", 2);
    }

    Cursor cur(bytes, 2);
    const std::size_t width_at = cur.pos();
    const long width = cur.require_uint("width");
    const long height = cur.require_uint("height");
    const long max_val = cur.require_uint("maxval");
    if (width < 1 || height < 1) throw ParseError("image dimensions must be positive", width_at);
    if (max_val < 1) throw ParseError("maxval must be positive", cur.pos());
    if (max_val > 255) throw UnsupportedFormat("maxval " + std::to_string(max_val) + " exceeds 255");
    if (width * height > 400'000'000L / channels) throw ParseError("image dimensions are too large", width_at);

    const std::size_t expected = static_cast<std::size_t>(width) * height * channels;
    std::vector<double> samples;
    samples.reserve(expected);

    if (plain) {
        long value = 0;
        while (samples.size() < expected) {
            const std::size_t at = cur.pos();
            if (!cur.next_uint(value, "sample")) throw ParseError(count_message(expected, samples.size()), at);
            if (value > max_val) {
                throw ParseError("sample " + std::to_string(value) + " exceeds maxval " + std::to_string(max_val), at);
            }
            samples.push_back(static_cast<double>(value));
        }
    } else {
        cur.expect_single_space();
        const std::size_t start = cur.pos();
        const std::size_t available = bytes.size() - start;
        if (available < expected) throw ParseError(count_message(expected, available), bytes.size());
        for (std::size_t i = 0; i < expected; ++i) {
            const auto value = static_cast<unsigned char>(bytes[start + i]);
            if (value > max_val) {
                throw ParseError("sample " + std::to_string(value) + " exceeds maxval " + std::to_string(max_val),
                                 start + i);
            }
            samples.push_back(static_cast<double>(value));
        }
    }
    return Image(static_cast<int>(height), static_cast<int>(width), channels, std::move(samples),
                 static_cast<double>(max_val));
}

Image read_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
    return decode_pnm(bytes);
}

std::string encode_pnm(const Image& img, PnmFormat format) {
    const int expected_channels = format == PnmFormat::ppm_binary ? 3 : 1;
    if (img.channels() != expected_channels) {
        throw InvalidArgument(std::string("cannot encode a ") + std::to_string(img.channels()) + "-channel image as " +
                              (format == PnmFormat::ppm_binary ? "PPM" : "PGM"));
    }
    const int max_val = checked_max_val(img);
    std::string out = (format == PnmFormat::ppm_binary ? "P6\n" : "P5\n") + std::to_string(img.width()) + " " +
                      std::to_string(img.height()) + "\n" + std::to_string(max_val) + "\n";
    const std::size_t header = out.size();
    out.resize(header + img.size());
    auto src = img.samples();
    for (std::size_t i = 0; i < src.size(); ++i) out[header + i] = static_cast<char>(quantize_sample(src[i], max_val));
    return out;
}

void write_image(const Image& img, const std::filesystem::path& path, PnmFormat format) {
    const std::string bytes = encode_pnm(img, format);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) {
        std::error_code ec;
        std::filesystem::remove(path, ec);
        throw IoError("error while writing '" + path.string() + "'");
    }
}

}  // namespace lepfusion
