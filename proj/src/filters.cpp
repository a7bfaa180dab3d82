#include "lepfusion/filters.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lepfusion {

namespace {

void require_single_channel(const Image& img, const char* op) {
    if (img.channels() != 1) {
        throw InvalidArgument(std::string(op) + " expects a single-channel image, got " +
                              std::to_string(img.channels()) + " channels");
    }
}

void require_radius(int radius) {
    if (radius < 1) throw InvalidArgument("window radius must be >= 1, got " + std::to_string(radius));
}

// Applies a per-plane operation to every channel.
template <typename Fn>
Image per_channel(const Image& img, Fn&& fn) {
    if (img.channels() == 1) return fn(img);
    Image out(img.height(), img.width(), img.channels(), img.max_val());
    for (int c = 0; c < img.channels(); ++c) out.set_channel(c, fn(img.channel(c)));
    return out;
}

Image box_mean_plane(const Image& img, int r) {
    const int h = img.height();
    const int w = img.width();
    const double n = static_cast<double>(2 * r + 1) * (2 * r + 1);

    // Horizontal window sums.
    std::vector<double> rows(static_cast<std::size_t>(h) * w);
    for (int y = 0; y < h; ++y) {
        const double* src = &img.samples()[static_cast<std::size_t>(y) * w];
        double* dst = &rows[static_cast<std::size_t>(y) * w];
        double sum = 0.0;
        for (int dx = -r; dx <= r; ++dx) sum += src[clamp_index(dx, w)];
        dst[0] = sum;
        for (int x = 1; x < w; ++x) {
            sum += src[clamp_index(x + r, w)] - src[clamp_index(x - r - 1, w)];
            dst[x] = sum;
        }
    }

    // Vertical window sums over the horizontal sums, one row of column totals at a time.
    Image out(h, w, 1, img.max_val());
    std::vector<double> col(w, 0.0);
    for (int dy = -r; dy <= r; ++dy) {
        const double* src = &rows[static_cast<std::size_t>(clamp_index(dy, h)) * w];
        for (int x = 0; x < w; ++x) col[x] += src[x];
    }
    auto dst = out.samples();
    for (int y = 0; y < h; ++y) {
        if (y > 0) {
            const double* add = &rows[static_cast<std::size_t>(clamp_index(y + r, h)) * w];
            const double* sub = &rows[static_cast<std::size_t>(clamp_index(y - r - 1, h)) * w];
            for (int x = 0; x < w; ++x) col[x] += add[x] - sub[x];
        }
        for (int x = 0; x < w; ++x) dst[static_cast<std::size_t>(y) * w + x] = col[x] / n;
    }
    return out;
}

Image gaussian_plane(const Image& img, const std::vector<double>& k) {
    const int r = static_cast<int>(k.size() / 2);
    const int h = img.height();
    const int w = img.width();
    Image tmp(h, w, 1, img.max_val());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int d = -r; d <= r; ++d) acc += k[d + r] * img.at(y, clamp_index(x + d, w));
            tmp.at(y, x) = acc;
        }
    }
    Image out(h, w, 1, img.max_val());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int d = -r; d <= r; ++d) acc += k[d + r] * tmp.at(clamp_index(y + d, h), x);
            out.at(y, x) = acc;
        }
    }
    return out;
}

Image shifted(const Image& img, double offset) {
    Image out = img;
    for (double& v : out.samples()) v -= offset;
    return out;
}

Image multiply(const Image& a, const Image& b) {
    Image out = a;
    auto o = out.samples();
    auto s = b.samples();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] *= s[i];
    return out;
}

struct LinearFit {
    Image a;
    Image b_shifted;  // intercept in the shifted coordinates used for the fit
};

// Per-window fit of p ~ a * g + b, with a = cov / (var + reg) and 0/0 := 0.
// Callers shift both images by their first sample so constant regions stay exact.
LinearFit fit_windows(const Image& p, const Image& g, int radius, const Image& reg) {
    const Image mean_g = box_mean_plane(g, radius);
    const Image mean_p = box_mean_plane(p, radius);
    const Image mean_gg = box_mean_plane(multiply(g, g), radius);
    const Image mean_gp = box_mean_plane(multiply(g, p), radius);

    LinearFit fit{Image(g.height(), g.width(), 1, g.max_val()), Image(g.height(), g.width(), 1, p.max_val())};
    auto a = fit.a.samples();
    auto b = fit.b_shifted.samples();
    auto mg = mean_g.samples();
    auto mp = mean_p.samples();
    auto mgg = mean_gg.samples();
    auto mgp = mean_gp.samples();
    auto rg = reg.samples();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double var = std::max(0.0, mgg[i] - mg[i] * mg[i]);
        const double cov = mgp[i] - mg[i] * mp[i];
        const double denom = var + rg[i];
        a[i] = denom > 0.0 ? cov / denom : 0.0;
        b[i] = mp[i] - a[i] * mg[i];
    }
    return fit;
}

// Output = mean(a) * guide + mean(b), evaluated in shifted coordinates.
Image apply_fit(const LinearFit& fit, const Image& g_shifted, double p_offset, int radius) {
    const Image a_mean = box_mean_plane(fit.a, radius);
    const Image b_mean = box_mean_plane(fit.b_shifted, radius);
    Image out(g_shifted.height(), g_shifted.width(), 1, fit.b_shifted.max_val());
    auto o = out.samples();
    auto am = a_mean.samples();
    auto bm = b_mean.samples();
    auto g = g_shifted.samples();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = am[i] * g[i] + bm[i] + p_offset;
    return out;
}

void require_pair(const Image& p, const Image& guide, const char* op) {
    require_single_channel(p, op);
    require_single_channel(guide, op);
    if (!p.same_size(guide)) {
        throw InvalidArgument(std::string(op) + ": input is " + std::to_string(p.width()) + "x" +
                              std::to_string(p.height()) + " but guide is " + std::to_string(guide.width()) +
                              "x" + std::to_string(guide.height()));
    }
}

}  // namespace

void FilterParams::validate() const {
    require_radius(radius);
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be >= 0");
    if (!(beta >= 0.0 && beta <= 2.0)) throw InvalidArgument("beta must lie in [0, 2]");
}

Image box_mean(const Image& img, int radius) {
    require_radius(radius);
    return per_channel(img, [radius](const Image& plane) { return box_mean_plane(plane, radius); });
}

std::vector<double> gaussian_kernel_1d(int radius, double sigma) {
    require_radius(radius);
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("gaussian sigma must be positive");
    std::vector<double> k(2 * radius + 1);
    double total = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        k[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
        total += k[i + radius];
    }
    for (double& v : k) v /= total;
    return k;
}

Image gaussian_filter(const Image& img, int radius, double sigma) {
    const auto k = gaussian_kernel_1d(radius, sigma);
    return per_channel(img, [&k](const Image& plane) { return gaussian_plane(plane, k); });
}

Image laplacian_filter(const Image& img) {
    require_single_channel(img, "laplacian_filter");
    const int h = img.height();
    const int w = img.width();
    Image out(h, w, 1, img.max_val());
    for (int y = 0; y < h; ++y) {
        const int yu = clamp_index(y - 1, h);
        const int yd = clamp_index(y + 1, h);
        for (int x = 0; x < w; ++x) {
            const int xl = clamp_index(x - 1, w);
            const int xr = clamp_index(x + 1, w);
            out.at(y, x) = img.at(yu, x) + img.at(yd, x) + img.at(y, xl) + img.at(y, xr) - 4.0 * img.at(y, x);
        }
    }
    return out;
}

Image gradient_magnitude(const Image& img) {
    require_single_channel(img, "gradient_magnitude");
    const int h = img.height();
    const int w = img.width();
    Image out(h, w, 1, img.max_val());
    for (int y = 0; y < h; ++y) {
        const int yu = clamp_index(y - 1, h);
        const int yd = clamp_index(y + 1, h);
        for (int x = 0; x < w; ++x) {
            const double dx = 0.5 * (img.at(y, clamp_index(x + 1, w)) - img.at(y, clamp_index(x - 1, w)));
            const double dy = 0.5 * (img.at(yd, x) - img.at(yu, x));
            out.at(y, x) = std::sqrt(dx * dx + dy * dy);
        }
    }
    return out;
}

Image lep_regularizer(const Image& guide, const FilterParams& params) {
    params.validate();
    Image grad = gradient_magnitude(guide);
    const double exponent = 2.0 - params.beta;
    for (double& v : grad.samples()) v = std::pow(v, exponent);
    Image reg = box_mean_plane(grad, params.radius);
    for (double& v : reg.samples()) v *= params.alpha;
    return reg;
}

LepResult lep_filter(const Image& img, const FilterParams& params) {
    require_single_channel(img, "lep_filter");
    params.validate();
    const double offset = img.samples()[0];
    const Image centred = shifted(img, offset);
    Image reg = lep_regularizer(img, params);
    LinearFit fit = fit_windows(centred, centred, params.radius, reg);

    LepResult result;
    result.output = apply_fit(fit, centred, offset, params.radius);

    // Report b in the caller's coordinates: b = mean - a * mean.
    Image b = fit.b_shifted;
    {
        auto bs = b.samples();
        auto a = fit.a.samples();
        for (std::size_t i = 0; i < bs.size(); ++i) bs[i] += offset - a[i] * offset;
    }
    result.coeffs.a_mean = box_mean_plane(fit.a, params.radius);
    result.coeffs.b_mean = box_mean_plane(b, params.radius);
    result.coeffs.a = std::move(fit.a);
    result.coeffs.b = std::move(b);
    result.coeffs.regularizer = std::move(reg);
    return result;
}

Image lep_filter_guided(const Image& p, const Image& guide, const FilterParams& params) {
    require_pair(p, guide, "lep_filter_guided");
    params.validate();
    const double p_offset = p.samples()[0];
    const double g_offset = guide.samples()[0];
    const Image g_c = shifted(guide, g_offset);
    const Image reg = lep_regularizer(guide, params);
    const LinearFit fit = fit_windows(shifted(p, p_offset), g_c, params.radius, reg);
    return apply_fit(fit, g_c, p_offset, params.radius);
}

Image guided_filter_baseline(const Image& p, const Image& guide, int radius, double epsilon) {
    require_pair(p, guide, "guided_filter_baseline");
    require_radius(radius);
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("epsilon must be positive");
    const double p_offset = p.samples()[0];
    const double g_offset = guide.samples()[0];
    const Image g_c = shifted(guide, g_offset);
    const Image reg = constant_image(guide.height(), guide.width(), 1, epsilon, guide.max_val());
    const LinearFit fit = fit_windows(shifted(p, p_offset), g_c, radius, reg);
    return apply_fit(fit, g_c, p_offset, radius);
}

}  // namespace lepfusion
