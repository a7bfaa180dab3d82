#pragma once

#include <optional>
#include <string>

#include "lepfusion/image.hpp"

namespace lepfusion {

/// Gaussian priors of the naturalness score, on an 8-bit intensity scale.
struct NaturalnessPriors {
    double mean = 115.0;
    double mean_tau = 40.0;
    double stddev = 28.0;
    double stddev_tau = 15.0;
};

struct MetricsReport {
    std::optional<double> psnr;  // +inf for identical images; empty without a reference
    std::optional<double> ssim;  // empty without a reference
    double sharpness = 0.0;
    double naturalness = 0.0;
};

/// 10 log10(max_val^2 / MSE) over all samples; +infinity when MSE == 0.
double psnr(const Image& a, const Image& b, double max_val);

/// Mean SSIM over all valid 11x11 Gaussian (sigma 1.5) windows, with
/// C1 = (0.01 max_val)^2 and C2 = (0.03 max_val)^2. Single-channel, >= 11x11.
double ssim(const Image& a, const Image& b, double max_val);

/// Mean central-difference gradient magnitude over interior pixels (0 if none).
double sharpness(const Image& img);

/// exp(-(mu - mu0)^2 / 2 tau_m^2) * exp(-(sd - sd0)^2 / 2 tau_d^2) of the
/// global mean and standard deviation, after rescaling samples to [0, 255].
double naturalness(const Image& img, const NaturalnessPriors& priors = {});

/// Sharpness and naturalness of `fused` (luminance for colour input), plus
/// PSNR and SSIM against `reference` when one is given.
MetricsReport report(const Image& fused, const Image* reference = nullptr, const NaturalnessPriors& priors = {});

/// "inf" for infinite values, fixed six decimals otherwise.
std::string format_metric(double value);

/// key=value lines in the order psnr, ssim, sharpness, naturalness (absent fields skipped).
std::string format_report_lines(const MetricsReport& report);

/// Header "sharpness,naturalness,psnr,ssim" and one record; absent fields are empty.
std::string format_report_csv(const MetricsReport& report);

}  // namespace lepfusion
