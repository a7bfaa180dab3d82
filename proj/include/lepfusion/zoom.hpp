#pragma once

#include <vector>

#include "lepfusion/image.hpp"

namespace lepfusion {

struct ZoomSpec {
    Rect region;
    double scale = 1.0;  // magnification per axis
};

/// Triangle kernel max(0, 1 - |s|).
double bilinear_kernel(double s) noexcept;

/// Interpolated value of every channel at (x, y), pixel-centre coordinates.
/// Throws BoundsError outside [0, width-1] x [0, height-1].
std::vector<double> sample_bilinear(const Image& img, double x, double y);

/// Single-channel convenience overload.
double sample_bilinear(const Image& img, double x, double y, int channel);

/// Corner-aligned bilinear resize: output (i, j) samples the input at
/// (j*(in_w-1)/(out_w-1), i*(in_h-1)/(out_h-1)); a unit output axis samples 0.
Image resize_bilinear(const Image& img, int out_width, int out_height);

/// Crop then resize to round(region * scale).
Image zoom_region(const Image& img, const ZoomSpec& spec);

}  // namespace lepfusion
