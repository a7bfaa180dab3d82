#include "lepfusion/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lepfusion {

namespace {

void check_shape(int height, int width, int channels, double max_val) {
    if (height <= 0 || width <= 0) {
        throw InvalidArgument("image dimensions must be positive, got " + std::to_string(height) + "x" +
                              std::to_string(width));
    }
    if (channels != 1 && channels != 3) {
        throw InvalidArgument("image must have 1 or 3 channels, got " + std::to_string(channels));
    }
    if (!(max_val > 0.0) || !std::isfinite(max_val)) {
        throw InvalidArgument("max_val must be a positive finite number");
    }
}

}  // namespace

Image::Image(int height, int width, int channels, double max_val)
    : height_(height), width_(width), channels_(channels), max_val_(max_val) {
    check_shape(height, width, channels, max_val);
    data_.assign(static_cast<std::size_t>(height) * width * channels, 0.0);
}

Image::Image(int height, int width, int channels, std::vector<double> samples, double max_val)
    : height_(height), width_(width), channels_(channels), max_val_(max_val), data_(std::move(samples)) {
    check_shape(height, width, channels, max_val);
    if (data_.size() != static_cast<std::size_t>(height) * width * channels) {
        throw InvalidArgument("sample count " + std::to_string(data_.size()) + " does not match " +
                              std::to_string(height) + "x" + std::to_string(width) + "x" +
                              std::to_string(channels));
    }
}

Image Image::channel(int c) const {
    if (c < 0 || c >= channels_) throw InvalidArgument("channel index out of range");
    Image out(height_, width_, 1, max_val_);
    auto dst = out.samples();
    for (std::size_t i = 0; i < pixel_count(); ++i) dst[i] = data_[i * channels_ + c];
    return out;
}

void Image::set_channel(int c, const Image& plane) {
    if (c < 0 || c >= channels_) throw InvalidArgument("channel index out of range");
    if (plane.channels() != 1 || !same_size(plane)) {
        throw InvalidArgument("set_channel expects a single-channel plane of matching size");
    }
    auto src = plane.samples();
    for (std::size_t i = 0; i < pixel_count(); ++i) data_[i * channels_ + c] = src[i];
}

void Image::set_max_val(double max_val) {
    if (!(max_val > 0.0) || !std::isfinite(max_val)) throw InvalidArgument("max_val must be positive");
    max_val_ = max_val;
}

bool contains(const Image& img, const Rect& r) noexcept {
    return r.x0 >= 0 && r.y0 >= 0 && r.width > 0 && r.height > 0 &&
           static_cast<long>(r.x0) + r.width <= img.width() &&
           static_cast<long>(r.y0) + r.height <= img.height();
}

Image constant_image(int height, int width, int channels, double value, double max_val) {
    if (!std::isfinite(value)) throw InvalidArgument("constant value must be finite");
    Image out(height, width, channels, max_val);
    std::fill(out.samples().begin(), out.samples().end(), value);
    return out;
}

Image crop(const Image& img, const Rect& r) {
    if (!contains(img, r)) {
        throw BoundsError("crop region (" + std::to_string(r.x0) + "," + std::to_string(r.y0) + "," +
                          std::to_string(r.width) + "," + std::to_string(r.height) + ") exceeds " +
                          std::to_string(img.width()) + "x" + std::to_string(img.height()) + " image");
    }
    Image out(r.height, r.width, img.channels(), img.max_val());
    for (int y = 0; y < r.height; ++y)
        for (int x = 0; x < r.width; ++x)
            for (int c = 0; c < img.channels(); ++c) out.at(y, x, c) = img.at(r.y0 + y, r.x0 + x, c);
    return out;
}

Image rgb_to_luma(const Image& img) {
    if (img.channels() != 3) {
        throw InvalidArgument("rgb_to_luma expects 3 channels, got " + std::to_string(img.channels()));
    }
    Image out(img.height(), img.width(), 1, img.max_val());
    auto src = img.samples();
    auto dst = out.samples();
    for (std::size_t i = 0; i < out.pixel_count(); ++i) {
        dst[i] = 0.299 * src[3 * i] + 0.587 * src[3 * i + 1] + 0.114 * src[3 * i + 2];
    }
    return out;
}

Image to_luma(const Image& img) {
    return img.channels() == 3 ? rgb_to_luma(img) : img;
}

Image pad_replicate(const Image& img, int margin) {
    if (margin < 0) throw InvalidArgument("padding margin must be non-negative");
    if (margin == 0) return img;
    const int h = img.height() + 2 * margin;
    const int w = img.width() + 2 * margin;
    Image out(h, w, img.channels(), img.max_val());
    for (int y = 0; y < h; ++y) {
        const int sy = clamp_index(y - margin, img.height());
        for (int x = 0; x < w; ++x) {
            const int sx = clamp_index(x - margin, img.width());
            for (int c = 0; c < img.channels(); ++c) out.at(y, x, c) = img.at(sy, sx, c);
        }
    }
    return out;
}

std::pair<double, double> min_max(const Image& img) {
    auto [lo, hi] = std::minmax_element(img.samples().begin(), img.samples().end());
    return {*lo, *hi};
}

}  // namespace lepfusion
