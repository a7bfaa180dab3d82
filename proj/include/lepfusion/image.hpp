#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lepfusion/errors.hpp"

namespace lepfusion {

/// Row-major, channel-interleaved image of double samples in [0, max_val].
///
/// Samples are kept in double precision regardless of the file bit depth;
/// quantization only happens when an image is written out.
class Image {
public:
    Image() = default;

    /// Zero-filled image. Throws InvalidArgument for non-positive dimensions,
    /// a channel count other than 1 or 3, or max_val <= 0.
    Image(int height, int width, int channels, double max_val = 255.0);

    /// Wraps existing samples; samples.size() must equal height*width*channels.
    Image(int height, int width, int channels, std::vector<double> samples, double max_val = 255.0);

    int height() const noexcept { return height_; }
    int width() const noexcept { return width_; }
    int channels() const noexcept { return channels_; }
    double max_val() const noexcept { return max_val_; }
    std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(height_) * width_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    std::span<const double> samples() const noexcept { return data_; }
    std::span<double> samples() noexcept { return data_; }

    double& at(int y, int x, int c = 0) noexcept {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
    }
    double at(int y, int x, int c = 0) const noexcept {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
    }

    /// Same height, width and channel count.
    bool same_shape(const Image& other) const noexcept {
        return height_ == other.height_ && width_ == other.width_ && channels_ == other.channels_;
    }
    bool same_size(const Image& other) const noexcept {
        return height_ == other.height_ && width_ == other.width_;
    }

    /// Extracts channel `c` as a single-channel image.
    Image channel(int c) const;
    /// Overwrites channel `c` with a single-channel image of the same size.
    void set_channel(int c, const Image& plane);

    void set_max_val(double max_val);

    friend bool operator==(const Image&, const Image&) = default;

private:
    int height_ = 0;
    int width_ = 0;
    int channels_ = 0;
    double max_val_ = 255.0;
    std::vector<double> data_;
};

struct Rect {
    int x0 = 0;
    int y0 = 0;
    int width = 0;
    int height = 0;
};

/// True when `region` has positive extent and lies inside `img`.
bool contains(const Image& img, const Rect& region) noexcept;

/// Clamps `i` into [0, n-1]; replicate-padding index rule used by every windowed filter.
constexpr int clamp_index(int i, int n) noexcept {
    return i < 0 ? 0 : (i >= n ? n - 1 : i);
}

Image constant_image(int height, int width, int channels, double value, double max_val = 255.0);

/// Bit-exact copy of `region`. Throws BoundsError if it does not fit.
Image crop(const Image& img, const Rect& region);

/// BT.601 luminance of a 3-channel image.
Image rgb_to_luma(const Image& img);

/// Luminance for 3-channel input, a copy for single-channel input.
Image to_luma(const Image& img);

/// Grows the image by `margin` on every side, repeating the nearest edge pixel.
Image pad_replicate(const Image& img, int margin);

/// Minimum and maximum sample over all channels.
std::pair<double, double> min_max(const Image& img);

}  // namespace lepfusion
