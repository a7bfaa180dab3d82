#pragma once

// Brute-force reference implementations used only by the tests. Everything
// here loops over windows explicitly and shares no code with the library
// beyond the Image container.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "lepfusion/image.hpp"

namespace oracle {

using lepfusion::Image;

inline int clampi(int i, int n) {
    return i < 0 ? 0 : (i >= n ? n - 1 : i);
}

inline Image random_image(int h, int w, int c, std::uint32_t seed, double lo = 0.0, double hi = 255.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    Image img(h, w, c);
    for (double& v : img.samples()) v = dist(rng);
    return img;
}

inline Image random_integer_image(int h, int w, int c, std::uint32_t seed, int max_val = 255) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(0, max_val);
    Image img(h, w, c, static_cast<double>(max_val));
    for (double& v : img.samples()) v = dist(rng);
    return img;
}

// Left `split` columns take `lo`, the rest `hi`.
inline Image step_edge(int h, int w, int split, double lo, double hi) {
    Image img(h, w, 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) img.at(y, x) = x < split ? lo : hi;
    return img;
}

inline Image naive_box_mean(const Image& img, int r) {
    Image out(img.height(), img.width(), img.channels(), img.max_val());
    const double n = static_cast<double>((2 * r + 1) * (2 * r + 1));
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            for (int c = 0; c < img.channels(); ++c) {
                double s = 0.0;
                for (int dy = -r; dy <= r; ++dy)
                    for (int dx = -r; dx <= r; ++dx)
                        s += img.at(clampi(y + dy, img.height()), clampi(x + dx, img.width()), c);
                out.at(y, x, c) = s / n;
            }
    return out;
}

// Direct 2-D Gaussian weights exp(-(x^2+y^2)/2s^2), normalized over the full square.
inline std::vector<std::vector<double>> gaussian_2d(int r, double sigma) {
    std::vector<std::vector<double>> k(2 * r + 1, std::vector<double>(2 * r + 1));
    double total = 0.0;
    for (int y = -r; y <= r; ++y)
        for (int x = -r; x <= r; ++x) total += k[y + r][x + r] = std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
    for (auto& row : k)
        for (double& v : row) v /= total;
    return k;
}

inline Image naive_convolve(const Image& img, const std::vector<std::vector<double>>& k) {
    const int r = static_cast<int>(k.size() / 2);
    Image out(img.height(), img.width(), img.channels(), img.max_val());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            for (int c = 0; c < img.channels(); ++c) {
                double s = 0.0;
                for (int dy = -r; dy <= r; ++dy)
                    for (int dx = -r; dx <= r; ++dx)
                        s += k[dy + r][dx + r] * img.at(clampi(y + dy, img.height()), clampi(x + dx, img.width()), c);
                out.at(y, x, c) = s;
            }
    return out;
}

inline double central_gradient(const Image& img, int y, int x) {
    const int h = img.height();
    const int w = img.width();
    const double dx = (img.at(y, clampi(x + 1, w)) - img.at(y, clampi(x - 1, w))) / 2.0;
    const double dy = (img.at(clampi(y + 1, h), x) - img.at(clampi(y - 1, h), x)) / 2.0;
    return std::sqrt(dx * dx + dy * dy);
}

struct WindowFit {
    double a;
    double b;
};

// Minimizes sum_i (p_i - a g_i - b)^2 + a^2 * penalty over one window by
// solving the 2x2 normal equations with Cramer's rule. Singular systems
// (flat guide, zero penalty) resolve to a = 0, b = mean(p).
inline WindowFit solve_window(const std::vector<double>& p, const std::vector<double>& g, double penalty) {
    double sg = 0, sp = 0, sgg = 0, sgp = 0;
    const double n = static_cast<double>(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        sg += g[i];
        sp += p[i];
        sgg += g[i] * g[i];
        sgp += g[i] * p[i];
    }
    // [sgg + penalty, sg; sg, n] [a; b] = [sgp; sp]
    const double det = (sgg + penalty) * n - sg * sg;
    if (std::abs(det) <= 1e-12 * (std::abs(sgg + penalty) * n + sg * sg)) return {0.0, sp / n};
    const double a = (sgp * n - sg * sp) / det;
    const double b = ((sgg + penalty) * sp - sg * sgp) / det;
    return {a, b};
}

enum class Penalty { lep, guided };

// Windowed linear regression of p on g, then each pixel averages the
// estimates a_k g_i + b_k of every window centre k within `r` (centres
// outside the image replicate the nearest one).
//   lep:    penalty = alpha * sum_{i in w} |grad g_i|^(2 - beta)
//   guided: penalty = N * epsilon (epsilon passed as alpha)
inline Image windowed_regression(const Image& p, const Image& g, int r, double alpha, double beta, Penalty kind) {
    const int h = g.height();
    const int w = g.width();
    const int n = (2 * r + 1) * (2 * r + 1);
    std::vector<WindowFit> fits(static_cast<std::size_t>(h) * w);
    for (int ky = 0; ky < h; ++ky)
        for (int kx = 0; kx < w; ++kx) {
            std::vector<double> pv, gv;
            double penalty = 0.0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    const int y = clampi(ky + dy, h);
                    const int x = clampi(kx + dx, w);
                    pv.push_back(p.at(y, x));
                    gv.push_back(g.at(y, x));
                    if (kind == Penalty::lep) penalty += std::pow(central_gradient(g, y, x), 2.0 - beta);
                }
            penalty = kind == Penalty::lep ? alpha * penalty : n * alpha;
            fits[static_cast<std::size_t>(ky) * w + kx] = solve_window(pv, gv, penalty);
        }
    Image out(h, w, 1, p.max_val());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double s = 0.0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    const WindowFit& f = fits[static_cast<std::size_t>(clampi(y + dy, h)) * w + clampi(x + dx, w)];
                    s += f.a * g.at(y, x) + f.b;
                }
            out.at(y, x) = s / n;
        }
    return out;
}

inline Image lep(const Image& img, int r, double alpha, double beta) {
    return windowed_regression(img, img, r, alpha, beta, Penalty::lep);
}

inline Image lep_guided(const Image& p, const Image& guide, int r, double alpha, double beta) {
    return windowed_regression(p, guide, r, alpha, beta, Penalty::lep);
}

inline Image guided(const Image& p, const Image& guide, int r, double eps) {
    return windowed_regression(p, guide, r, eps, 0.0, Penalty::guided);
}

// Per-window SSIM with explicit centred moments and a direct 2-D Gaussian window.
inline double ssim(const Image& a, const Image& b, double max_val) {
    const auto k = gaussian_2d(5, 1.5);
    const double c1 = std::pow(0.01 * max_val, 2);
    const double c2 = std::pow(0.03 * max_val, 2);
    double total = 0.0;
    int count = 0;
    for (int y = 5; y < a.height() - 5; ++y)
        for (int x = 5; x < a.width() - 5; ++x) {
            double ma = 0, mb = 0;
            for (int dy = -5; dy <= 5; ++dy)
                for (int dx = -5; dx <= 5; ++dx) {
                    ma += k[dy + 5][dx + 5] * a.at(y + dy, x + dx);
                    mb += k[dy + 5][dx + 5] * b.at(y + dy, x + dx);
                }
            double va = 0, vb = 0, cov = 0;
            for (int dy = -5; dy <= 5; ++dy)
                for (int dx = -5; dx <= 5; ++dx) {
                    const double da = a.at(y + dy, x + dx) - ma;
                    const double db = b.at(y + dy, x + dx) - mb;
                    va += k[dy + 5][dx + 5] * da * da;
                    vb += k[dy + 5][dx + 5] * db * db;
                    cov += k[dy + 5][dx + 5] * da * db;
                }
            total += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
            ++count;
        }
    return total / count;
}

// Two horizontal linear interpolations, then one vertical.
inline double bilinear_two_pass(const Image& img, double x, double y) {
    const int x0 = static_cast<int>(std::floor(x));
    const int y0 = static_cast<int>(std::floor(y));
    const int x1 = std::min(x0 + 1, img.width() - 1);
    const int y1 = std::min(y0 + 1, img.height() - 1);
    const double fx = x - x0;
    const double fy = y - y0;
    const double top = img.at(y0, x0) + fx * (img.at(y0, x1) - img.at(y0, x0));
    const double bottom = img.at(y1, x0) + fx * (img.at(y1, x1) - img.at(y1, x0));
    return top + fy * (bottom - top);
}

inline double max_abs_diff(const Image& a, const Image& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.samples()[i] - b.samples()[i]));
    return m;
}

inline double total_variation(const Image& img) {
    double tv = 0.0;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            if (x + 1 < img.width()) tv += std::abs(img.at(y, x + 1) - img.at(y, x));
            if (y + 1 < img.height()) tv += std::abs(img.at(y + 1, x) - img.at(y, x));
        }
    return tv;
}

}  // namespace oracle
