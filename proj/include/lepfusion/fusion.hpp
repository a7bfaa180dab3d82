#pragma once

#include <span>
#include <vector>

#include "lepfusion/filters.hpp"
#include "lepfusion/image.hpp"

namespace lepfusion {

/// Which edge-aware filter turns the binary weight maps into smooth weights.
enum class RefineMethod {
    lep,     // cross-guided LEP filter (default)
    guided,  // classic guided filter, kept as a comparison baseline
};

struct FusionConfig {
    int avg_filter_size = 31;   // odd side length of the decomposition box filter
    int saliency_radius = 5;    // Gaussian radius for the saliency blur
    double saliency_sigma = 5.0;
    FilterParams base_params{15, 0.3, 1.0};
    FilterParams detail_params{3, 1e-4, 1.0};
    double weight_floor = 1e-12;

    RefineMethod refine = RefineMethod::lep;
    // Guided-filter epsilons used only when refine == RefineMethod::guided.
    double guided_base_eps = 0.3;
    double guided_detail_eps = 1e-6;

    /// Throws InvalidArgument when a field is out of range, or when the base
    /// refinement is not strictly wider and stronger than the detail refinement.
    void validate() const;
};

struct LayerPair {
    Image base;
    Image detail;
};

enum class WeightKind { binary, refined, normalized };

struct WeightStack {
    std::vector<Image> maps;
    WeightKind kind = WeightKind::binary;
};

struct FusionResult {
    Image fused;
    Image fused_unclamped;
    std::vector<LayerPair> layers;
    std::vector<Image> saliencies;
    WeightStack binary;
    WeightStack base_refined;
    WeightStack detail_refined;
    WeightStack base_weights;    // normalized
    WeightStack detail_weights;  // normalized
};

/// Base layer = box mean with an avg_filter_size window; detail = src - base.
LayerPair decompose(const Image& src, int avg_filter_size);

/// Gaussian-blurred absolute Laplacian of a single-channel image.
Image saliency(const Image& luma, int radius, double sigma);
Image saliency(const Image& luma, const FusionConfig& config);

/// One-hot argmax over the saliency maps; ties go to the lowest index.
WeightStack binary_weight_maps(std::span<const Image> saliencies);

/// Filters each map with lep_filter_guided under its own guide, then clamps to [0, 1].
WeightStack refine_weights(const WeightStack& binary, std::span<const Image> guides, const FilterParams& params);

/// Same as refine_weights with the classic guided filter.
WeightStack refine_weights_guided(const WeightStack& binary, std::span<const Image> guides, int radius,
                                  double epsilon);

/// (w + floor) / sum_m (w_m + floor) at every pixel.
WeightStack normalize_weights(const WeightStack& stack, double weight_floor);

/// Two-scale fusion of one or more registered sources of identical shape.
///
/// Saliency and weight guidance use luminance scaled to [0, 1]; the shared
/// weights then blend every channel of the base and detail layers. The fused
/// image is clamped to [0, max_val] of the first source.
FusionResult fuse(std::span<const Image> sources, const FusionConfig& config);

}  // namespace lepfusion
