#include "lepfusion/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "lepfusion/filters.hpp"

namespace lepfusion {

namespace {

constexpr int kSsimRadius = 5;
constexpr double kSsimSigma = 1.5;

void require_same_shape(const Image& a, const Image& b, const char* op) {
    if (!a.same_shape(b)) {
        throw InvalidArgument(std::string(op) + ": image shapes differ (" + std::to_string(a.width()) + "x" +
                              std::to_string(a.height()) + "x" + std::to_string(a.channels()) + " vs " +
                              std::to_string(b.width()) + "x" + std::to_string(b.height()) + "x" +
                              std::to_string(b.channels()) + ")");
    }
}

// Separable Gaussian filtering without padding: output covers only windows that fit.
std::vector<double> valid_gaussian(const std::vector<double>& src, int h, int w, const std::vector<double>& k) {
    const int r = static_cast<int>(k.size() / 2);
    const int ow = w - 2 * r;
    const int oh = h - 2 * r;
    std::vector<double> tmp(static_cast<std::size_t>(h) * ow);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int d = 0; d < static_cast<int>(k.size()); ++d) acc += k[d] * src[static_cast<std::size_t>(y) * w + x + d];
            tmp[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(oh) * ow);
    for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int d = 0; d < static_cast<int>(k.size()); ++d) acc += k[d] * tmp[static_cast<std::size_t>(y + d) * ow + x];
            out[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    }
    return out;
}

}  // namespace

double psnr(const Image& a, const Image& b, double max_val) {
    require_same_shape(a, b, "psnr");
    if (!(max_val > 0.0)) throw InvalidArgument("psnr: max_val must be positive");
    double sum = 0.0;
    auto sa = a.samples();
    auto sb = b.samples();
    for (std::size_t i = 0; i < sa.size(); ++i) {
        const double d = sa[i] - sb[i];
        sum += d * d;
    }
    const double mse = sum / static_cast<double>(sa.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(max_val * max_val / mse);
}

double ssim(const Image& a, const Image& b, double max_val) {
    require_same_shape(a, b, "ssim");
    if (a.channels() != 1) throw InvalidArgument("ssim expects single-channel images");
    const int side = 2 * kSsimRadius + 1;
    if (a.width() < side || a.height() < side) {
        throw InvalidArgument("ssim needs images of at least 11x11, got " + std::to_string(a.width()) + "x" +
                              std::to_string(a.height()));
    }
    const double c1 = (0.01 * max_val) * (0.01 * max_val);
    const double c2 = (0.03 * max_val) * (0.03 * max_val);
    const auto k = gaussian_kernel_1d(kSsimRadius, kSsimSigma);
    const int h = a.height();
    const int w = a.width();

    std::vector<double> va(a.samples().begin(), a.samples().end());
    std::vector<double> vb(b.samples().begin(), b.samples().end());
    std::vector<double> aa(va.size()), bb(va.size()), ab(va.size());
    for (std::size_t i = 0; i < va.size(); ++i) {
        aa[i] = va[i] * va[i];
        bb[i] = vb[i] * vb[i];
        ab[i] = va[i] * vb[i];
    }
    const auto mu_a = valid_gaussian(va, h, w, k);
    const auto mu_b = valid_gaussian(vb, h, w, k);
    const auto e_aa = valid_gaussian(aa, h, w, k);
    const auto e_bb = valid_gaussian(bb, h, w, k);
    const auto e_ab = valid_gaussian(ab, h, w, k);

    double total = 0.0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
        const double var_a = e_aa[i] - mu_a[i] * mu_a[i];
        const double var_b = e_bb[i] - mu_b[i] * mu_b[i];
        const double cov = e_ab[i] - mu_a[i] * mu_b[i];
        const double num = (2.0 * mu_a[i] * mu_b[i] + c1) * (2.0 * cov + c2);
        const double den = (mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + c1) * (var_a + var_b + c2);
        total += num / den;
    }
    return total / static_cast<double>(mu_a.size());
}

double sharpness(const Image& img) {
    if (img.channels() != 1) throw InvalidArgument("sharpness expects a single-channel image");
    if (img.width() < 3 || img.height() < 3) return 0.0;
    double total = 0.0;
    for (int y = 1; y < img.height() - 1; ++y) {
        for (int x = 1; x < img.width() - 1; ++x) {
            const double dx = 0.5 * (img.at(y, x + 1) - img.at(y, x - 1));
            const double dy = 0.5 * (img.at(y + 1, x) - img.at(y - 1, x));
            total += std::sqrt(dx * dx + dy * dy);
        }
    }
    return total / (static_cast<double>(img.width() - 2) * (img.height() - 2));
}

double naturalness(const Image& img, const NaturalnessPriors& priors) {
    if (img.channels() != 1) throw InvalidArgument("naturalness expects a single-channel image");
    if (!(priors.mean_tau > 0.0) || !(priors.stddev_tau > 0.0)) {
        throw InvalidArgument("naturalness prior widths must be positive");
    }
    const double scale = 255.0 / img.max_val();
    double sum = 0.0;
    for (double v : img.samples()) sum += v * scale;
    const double n = static_cast<double>(img.size());
    const double mean = sum / n;
    double sq = 0.0;
    for (double v : img.samples()) sq += (v * scale - mean) * (v * scale - mean);
    const double sd = std::sqrt(sq / n);

    const double dm = mean - priors.mean;
    const double ds = sd - priors.stddev;
    return std::exp(-dm * dm / (2.0 * priors.mean_tau * priors.mean_tau)) *
           std::exp(-ds * ds / (2.0 * priors.stddev_tau * priors.stddev_tau));
}

MetricsReport report(const Image& fused, const Image* reference, const NaturalnessPriors& priors) {
    MetricsReport out;
    const Image luma = to_luma(fused);
    out.sharpness = sharpness(luma);
    out.naturalness = naturalness(luma, priors);
    if (reference != nullptr) {
        require_same_shape(fused, *reference, "report");
        out.psnr = psnr(fused, *reference, fused.max_val());
        out.ssim = ssim(luma, to_luma(*reference), fused.max_val());
    }
    return out;
}

std::string format_metric(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

std::string format_report_lines(const MetricsReport& r) {
    std::string out;
    if (r.psnr) out += "psnr=" + format_metric(*r.psnr) + "\n";
    if (r.ssim) out += "ssim=" + format_metric(*r.ssim) + "\n";
    out += "sharpness=" + format_metric(r.sharpness) + "\n";
    out += "naturalness=" + format_metric(r.naturalness) + "\n";
    return out;
}

std::string format_report_csv(const MetricsReport& r) {
    std::string out = "sharpness,naturalness,psnr,ssim\n";
    out += format_metric(r.sharpness) + "," + format_metric(r.naturalness) + ",";
    if (r.psnr) out += format_metric(*r.psnr);
    out += ",";
    if (r.ssim) out += format_metric(*r.ssim);
    out += "\n";
    return out;
}

}  // namespace lepfusion
