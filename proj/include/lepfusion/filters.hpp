#pragma once

#include <vector>

#include "lepfusion/image.hpp"

namespace lepfusion {

/// Parameters of the local edge-preserving (LEP) filter.
///
/// The window around each pixel is (2*radius+1)^2 pixels. `alpha` scales the
/// gradient regularizer and `beta` sets its exponent (2 - beta), so larger
/// values of either smooth more aggressively.
struct FilterParams {
    int radius = 1;
    double alpha = 0.1;
    double beta = 1.0;

    /// Throws InvalidArgument unless radius >= 1, alpha >= 0 and beta in [0, 2].
    void validate() const;
    int window_pixels() const noexcept { return (2 * radius + 1) * (2 * radius + 1); }
};

/// Per-window linear coefficients of the LEP model, indexed by window centre.
struct CoeffMaps {
    Image a;            // slope of each window's fit
    Image b;            // intercept of each window's fit
    Image a_mean;       // box mean of `a` around each pixel
    Image b_mean;       // box mean of `b` around each pixel
    Image regularizer;  // alpha * mean(|grad I|^(2-beta)) over each window
};

struct LepResult {
    Image output;
    CoeffMaps coeffs;
};

/// Mean over the (2r+1)^2 replicate-padded window, per channel.
/// Runs in time independent of `radius` (separable running sums).
Image box_mean(const Image& img, int radius);

/// Normalized, sampled 1-D Gaussian of length 2*radius+1.
std::vector<double> gaussian_kernel_1d(int radius, double sigma);

/// Convolution with a normalized (2r+1)x(2r+1) Gaussian, replicate padding, per channel.
Image gaussian_filter(const Image& img, int radius, double sigma);

/// 4-neighbour 3x3 Laplacian [[0,1,0],[1,-4,1],[0,1,0]] with replicate padding.
Image laplacian_filter(const Image& img);

/// sqrt(dx^2 + dy^2) from central differences, replicate padding.
Image gradient_magnitude(const Image& img);

/// alpha * box_mean(|grad I|^(2-beta)): the per-window gradient penalty.
Image lep_regularizer(const Image& guide, const FilterParams& params);

/// Self-guided LEP filter on a single-channel image.
///
/// Each window gets a_k = var / (var + regularizer) and b_k = mean - a_k * mean;
/// the output at pixel i is mean(a)_i * I_i + mean(b)_i. A window with zero
/// variance and zero regularizer gets a_k = 0, so it returns its mean.
LepResult lep_filter(const Image& img, const FilterParams& params);

/// Cross-guided LEP: filters `p` following the structure of `guide`.
///
/// a_k = cov(guide, p) / (var(guide) + regularizer(guide)), b_k = mean(p) - a_k * mean(guide).
/// With guide == p this reduces to lep_filter.
Image lep_filter_guided(const Image& p, const Image& guide, const FilterParams& params);

/// Classic guided filter with constant regularizer epsilon, for comparison.
Image guided_filter_baseline(const Image& p, const Image& guide, int radius, double epsilon);

}  // namespace lepfusion
