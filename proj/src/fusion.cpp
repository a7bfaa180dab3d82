#include "lepfusion/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lepfusion {

namespace {

std::string size_str(const Image& img) {
    return std::to_string(img.width()) + "x" + std::to_string(img.height()) + "x" + std::to_string(img.channels());
}

void require_same_size(std::span<const Image> images, const char* what) {
    if (images.empty()) throw InvalidArgument(std::string(what) + ": no images given");
    for (const Image& img : images) {
        if (img.channels() != 1) throw InvalidArgument(std::string(what) + ": maps must be single-channel");
        if (!img.same_size(images.front())) {
            throw InvalidArgument(std::string(what) + ": size mismatch " + size_str(images.front()) + " vs " +
                                  size_str(img));
        }
    }
}

void require_guides(const WeightStack& stack, std::span<const Image> guides) {
    if (stack.maps.size() != guides.size()) {
        throw InvalidArgument("refine_weights: " + std::to_string(stack.maps.size()) + " weight maps but " +
                              std::to_string(guides.size()) + " guides");
    }
    require_same_size(stack.maps, "refine_weights");
}

void clamp_unit(Image& img) {
    for (double& v : img.samples()) v = std::clamp(v, 0.0, 1.0);
}

}  // namespace

void FusionConfig::validate() const {
    if (avg_filter_size < 3 || avg_filter_size % 2 == 0) {
        throw InvalidArgument("average filter size must be odd and >= 3, got " + std::to_string(avg_filter_size));
    }
    if (saliency_radius < 1) throw InvalidArgument("saliency radius must be >= 1");
    if (!(saliency_sigma > 0.0)) throw InvalidArgument("saliency sigma must be positive");
    base_params.validate();
    detail_params.validate();
    if (base_params.radius <= detail_params.radius) {
        throw InvalidArgument("base refinement radius must exceed the detail radius");
    }
    if (base_params.alpha <= detail_params.alpha) {
        throw InvalidArgument("base refinement alpha must exceed the detail alpha");
    }
    if (!(weight_floor > 0.0)) throw InvalidArgument("weight floor must be positive");
    if (!(guided_base_eps > 0.0) || !(guided_detail_eps > 0.0)) {
        throw InvalidArgument("guided-filter epsilons must be positive");
    }
}

LayerPair decompose(const Image& src, int avg_filter_size) {
    if (avg_filter_size < 3 || avg_filter_size % 2 == 0) {
        throw InvalidArgument("average filter size must be odd and >= 3, got " + std::to_string(avg_filter_size));
    }
    LayerPair layers{box_mean(src, (avg_filter_size - 1) / 2), src};
    auto d = layers.detail.samples();
    auto b = layers.base.samples();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= b[i];
    return layers;
}

Image saliency(const Image& luma, int radius, double sigma) {
    if (luma.channels() != 1) throw InvalidArgument("saliency expects a single-channel image");
    Image high = laplacian_filter(luma);
    for (double& v : high.samples()) v = std::abs(v);
    return gaussian_filter(high, radius, sigma);
}

Image saliency(const Image& luma, const FusionConfig& config) {
    return saliency(luma, config.saliency_radius, config.saliency_sigma);
}

WeightStack binary_weight_maps(std::span<const Image> saliencies) {
    require_same_size(saliencies, "binary_weight_maps");
    const Image& first = saliencies.front();
    WeightStack stack;
    stack.kind = WeightKind::binary;
    stack.maps.assign(saliencies.size(), Image(first.height(), first.width(), 1, 1.0));
    for (std::size_t k = 0; k < first.pixel_count(); ++k) {
        std::size_t best = 0;
        for (std::size_t n = 1; n < saliencies.size(); ++n) {
            if (saliencies[n].samples()[k] > saliencies[best].samples()[k]) best = n;
        }
        stack.maps[best].samples()[k] = 1.0;
    }
    return stack;
}

WeightStack refine_weights(const WeightStack& binary, std::span<const Image> guides, const FilterParams& params) {
    require_guides(binary, guides);
    WeightStack out;
    out.kind = WeightKind::refined;
    for (std::size_t n = 0; n < binary.maps.size(); ++n) {
        Image w = lep_filter_guided(binary.maps[n], guides[n], params);
        clamp_unit(w);
        out.maps.push_back(std::move(w));
    }
    return out;
}

WeightStack refine_weights_guided(const WeightStack& binary, std::span<const Image> guides, int radius,
                                  double epsilon) {
    require_guides(binary, guides);
    WeightStack out;
    out.kind = WeightKind::refined;
    for (std::size_t n = 0; n < binary.maps.size(); ++n) {
        Image w = guided_filter_baseline(binary.maps[n], guides[n], radius, epsilon);
        clamp_unit(w);
        out.maps.push_back(std::move(w));
    }
    return out;
}

WeightStack normalize_weights(const WeightStack& stack, double weight_floor) {
    require_same_size(stack.maps, "normalize_weights");
    if (!(weight_floor > 0.0)) throw InvalidArgument("weight floor must be positive");
    WeightStack out{stack.maps, WeightKind::normalized};
    const std::size_t pixels = out.maps.front().pixel_count();
    for (std::size_t k = 0; k < pixels; ++k) {
        double total = 0.0;
        for (const Image& m : stack.maps) total += m.samples()[k] + weight_floor;
        for (Image& m : out.maps) m.samples()[k] = (m.samples()[k] + weight_floor) / total;
    }
    return out;
}

FusionResult fuse(std::span<const Image> sources, const FusionConfig& config) {
    if (sources.empty()) throw InvalidArgument("fuse: at least one source image is required");
    config.validate();
    const Image& first = sources.front();
    for (const Image& src : sources) {
        if (!src.same_shape(first)) {
            throw InvalidArgument("fuse: source sizes differ: " + size_str(first) + " vs " + size_str(src));
        }
    }

    FusionResult result;
    std::vector<Image> guides;
    for (const Image& src : sources) {
        result.layers.push_back(decompose(src, config.avg_filter_size));
        Image luma = to_luma(src);
        result.saliencies.push_back(saliency(luma, config));
        const double scale = 1.0 / src.max_val();
        for (double& v : luma.samples()) v *= scale;
        luma.set_max_val(1.0);
        guides.push_back(std::move(luma));
    }

    result.binary = binary_weight_maps(result.saliencies);
    if (config.refine == RefineMethod::lep) {
        result.base_refined = refine_weights(result.binary, guides, config.base_params);
        result.detail_refined = refine_weights(result.binary, guides, config.detail_params);
    } else {
        result.base_refined =
            refine_weights_guided(result.binary, guides, config.base_params.radius, config.guided_base_eps);
        result.detail_refined =
            refine_weights_guided(result.binary, guides, config.detail_params.radius, config.guided_detail_eps);
    }
    result.base_weights = normalize_weights(result.base_refined, config.weight_floor);
    result.detail_weights = normalize_weights(result.detail_refined, config.weight_floor);

    Image fused(first.height(), first.width(), first.channels(), first.max_val());
    const int channels = first.channels();
    for (std::size_t n = 0; n < sources.size(); ++n) {
        auto wb = result.base_weights.maps[n].samples();
        auto wd = result.detail_weights.maps[n].samples();
        auto base = result.layers[n].base.samples();
        auto detail = result.layers[n].detail.samples();
        auto out = fused.samples();
        for (std::size_t k = 0; k < first.pixel_count(); ++k) {
            for (int c = 0; c < channels; ++c) {
                const std::size_t i = k * channels + c;
                out[i] += wb[k] * base[i] + wd[k] * detail[i];
            }
        }
    }
    result.fused_unclamped = fused;
    for (double& v : fused.samples()) v = std::clamp(v, 0.0, first.max_val());
    result.fused = std::move(fused);
    return result;
}

}  // namespace lepfusion
