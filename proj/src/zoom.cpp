#include "lepfusion/zoom.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lepfusion {

namespace {

void require_domain(const Image& img, double x, double y) {
    if (!(x >= 0.0 && x <= img.width() - 1) || !(y >= 0.0 && y <= img.height() - 1)) {
        throw BoundsError("sample point (" + std::to_string(x) + ", " + std::to_string(y) +
                          ") lies outside the image grid");
    }
}

}  // namespace

double bilinear_kernel(double s) noexcept {
    const double t = 1.0 - std::abs(s);
    return t > 0.0 ? t : 0.0;
}

double sample_bilinear(const Image& img, double x, double y, int channel) {
    require_domain(img, x, y);
    const int x0 = std::min(static_cast<int>(std::floor(x)), img.width() - 1);
    const int y0 = std::min(static_cast<int>(std::floor(y)), img.height() - 1);
    const int x1 = std::min(x0 + 1, img.width() - 1);
    const int y1 = std::min(y0 + 1, img.height() - 1);

    // Kernel weights of the four surrounding grid points. On the last row or
    // column x1 == x0 and its weight is exactly zero.
    const double wx0 = bilinear_kernel(x - x0);
    const double wx1 = x1 == x0 ? 0.0 : bilinear_kernel(x - x1);
    const double wy0 = bilinear_kernel(y - y0);
    const double wy1 = y1 == y0 ? 0.0 : bilinear_kernel(y - y1);

    return img.at(y0, x0, channel) * wx0 * wy0 + img.at(y0, x1, channel) * wx1 * wy0 +
           img.at(y1, x0, channel) * wx0 * wy1 + img.at(y1, x1, channel) * wx1 * wy1;
}

std::vector<double> sample_bilinear(const Image& img, double x, double y) {
    std::vector<double> out(img.channels());
    for (int c = 0; c < img.channels(); ++c) out[c] = sample_bilinear(img, x, y, c);
    return out;
}

Image resize_bilinear(const Image& img, int out_width, int out_height) {
    if (out_width < 1 || out_height < 1) {
        throw InvalidArgument("resize target must be at least 1x1, got " + std::to_string(out_width) + "x" +
                              std::to_string(out_height));
    }
    Image out(out_height, out_width, img.channels(), img.max_val());
    const double sx = out_width > 1 ? static_cast<double>(img.width() - 1) / (out_width - 1) : 0.0;
    const double sy = out_height > 1 ? static_cast<double>(img.height() - 1) / (out_height - 1) : 0.0;
    for (int i = 0; i < out_height; ++i) {
        // The last row/column maps to the far edge exactly so corners are preserved.
        const double y = i == out_height - 1 && out_height > 1 ? img.height() - 1 : i * sy;
        for (int j = 0; j < out_width; ++j) {
            const double x = j == out_width - 1 && out_width > 1 ? img.width() - 1 : j * sx;
            for (int c = 0; c < img.channels(); ++c) out.at(i, j, c) = sample_bilinear(img, x, y, c);
        }
    }
    return out;
}

Image zoom_region(const Image& img, const ZoomSpec& spec) {
    if (!(spec.scale > 0.0) || !std::isfinite(spec.scale)) {
        throw InvalidArgument("zoom scale must be positive");
    }
    const Image region = crop(img, spec.region);
    const long out_w = std::lround(spec.region.width * spec.scale);
    const long out_h = std::lround(spec.region.height * spec.scale);
    if (out_w < 1 || out_h < 1) {
        throw InvalidArgument("zoom scale " + std::to_string(spec.scale) + " collapses the region to nothing");
    }
    if (out_w == region.width() && out_h == region.height()) return region;
    return resize_bilinear(region, static_cast<int>(out_w), static_cast<int>(out_h));
}

}  // namespace lepfusion
