#include "lepfusion/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "lepfusion/config.hpp"
#include "lepfusion/fusion.hpp"
#include "lepfusion/metrics.hpp"
#include "lepfusion/pnm.hpp"
#include "lepfusion/zoom.hpp"

namespace lepfusion {

namespace fs = std::filesystem;

namespace {

// Raised for command-level validation failures (exit code 2).
struct ValidationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string dashed(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

std::string size_str(const Image& img) {
    return std::to_string(img.width()) + "x" + std::to_string(img.height()) +
           (img.channels() == 3 ? " (rgb)" : " (gray)");
}

// Output format follows the file extension; anything else follows the channel count.
PnmFormat format_for(const fs::path& path, const Image& img) {
    const std::string ext = path.extension().string();
    PnmFormat format = default_format(img);
    if (ext == ".pgm") format = PnmFormat::pgm_binary;
    if (ext == ".ppm") format = PnmFormat::ppm_binary;
    const int want = format == PnmFormat::ppm_binary ? 3 : 1;
    if (want != img.channels()) {
        throw ValidationFailure("cannot write a " + std::to_string(img.channels()) + "-channel image to '" +
                                path.string() + "'");
    }
    return format;
}

fs::path with_suffix(const fs::path& output, const std::string& suffix, const Image& img) {
    const std::string ext = img.channels() == 3 ? ".ppm" : ".pgm";
    return output.parent_path() / (output.stem().string() + suffix + ext);
}

// Files written by one command; removed again if the command fails part-way.
class OutputSet {
public:
    void add(fs::path path, Image img) { pending_.emplace_back(std::move(path), std::move(img)); }

    void commit() {
        std::vector<fs::path> written;
        try {
            for (const auto& [path, img] : pending_) {
                write_image(img, path, format_for(path, img));
                written.push_back(path);
            }
        } catch (...) {
            std::error_code ec;
            for (const auto& p : written) fs::remove(p, ec);
            throw;
        }
    }

private:
    std::vector<std::pair<fs::path, Image>> pending_;
};

// Detail layers are signed; shift them to mid-grey so they fit the file range.
Image detail_for_display(const Image& detail, double max_val) {
    Image out = detail;
    out.set_max_val(max_val);
    for (double& v : out.samples()) v += 0.5 * max_val;
    return out;
}

Image scaled_map(const Image& map, double scale) {
    Image out = map;
    out.set_max_val(255.0);
    for (double& v : out.samples()) v *= scale;
    return out;
}

struct GlobalOptions {
    std::string output;
    std::string config_path;
    bool verbose = false;
    bool dump = false;
    std::map<std::string, std::string> settings;
    std::map<std::string, CLI::Option*> setting_opts;
};

CliConfig effective_config(const GlobalOptions& g, std::ostream& err) {
    CliConfig config;
    if (!g.config_path.empty()) {
        for (const auto& [key, value] : load_settings(g.config_path)) apply_setting(config, key, value);
    }
    for (const auto& [key, opt] : g.setting_opts) {
        if (opt->count() > 0) apply_setting(config, key, g.settings.at(key));
    }
    if (g.dump) config.dump_intermediates = true;
    if (g.verbose) err << describe(config);
    return config;
}

int cmd_fuse(const GlobalOptions& g, const std::vector<std::string>& inputs, std::ostream& out, std::ostream& err) {
    const CliConfig config = effective_config(g, err);
    config.fusion.validate();

    std::vector<Image> sources;
    for (const auto& path : inputs) sources.push_back(read_image(path));
    for (std::size_t n = 1; n < sources.size(); ++n) {
        if (!sources[n].same_shape(sources[0])) {
            throw ValidationFailure("input sizes differ: '" + inputs[0] + "' is " + size_str(sources[0]) + ", '" +
                                    inputs[n] + "' is " + size_str(sources[n]));
        }
    }

    const fs::path output = g.output.empty() ? fs::path(sources[0].channels() == 3 ? "fused.ppm" : "fused.pgm")
                                             : fs::path(g.output);
    format_for(output, sources[0]);

    const FusionResult result = fuse(sources, config.fusion);

    OutputSet files;
    files.add(output, result.fused);
    if (config.dump_intermediates) {
        double sal_max = 0.0;
        for (const Image& s : result.saliencies) sal_max = std::max(sal_max, min_max(s).second);
        const double sal_scale = sal_max > 0.0 ? 255.0 / sal_max : 0.0;
        for (std::size_t n = 0; n < sources.size(); ++n) {
            const std::string idx = "_" + std::to_string(n + 1);
            const double mv = sources[n].max_val();
            files.add(with_suffix(output, "_base" + idx, sources[n]), result.layers[n].base);
            files.add(with_suffix(output, "_detail" + idx, sources[n]), detail_for_display(result.layers[n].detail, mv));
            files.add(with_suffix(output, "_sal" + idx, result.saliencies[n]), scaled_map(result.saliencies[n], sal_scale));
            files.add(with_suffix(output, "_wb" + idx, result.base_weights.maps[n]),
                      scaled_map(result.base_weights.maps[n], 255.0));
            files.add(with_suffix(output, "_wd" + idx, result.detail_weights.maps[n]),
                      scaled_map(result.detail_weights.maps[n], 255.0));
        }
    }
    files.commit();
    out << format_report_lines(report(result.fused, nullptr, config.priors));
    return kExitOk;
}

int cmd_zoom(const GlobalOptions& g, const std::string& input, const std::string& rect_text, CLI::Option* rect_opt,
             double scale, CLI::Option* scale_opt, const std::string& truth_path, std::ostream& out,
             std::ostream& err) {
    CliConfig config = effective_config(g, err);
    if (rect_opt->count() > 0) config.zoom_rect = parse_rect(rect_text);
    if (scale_opt->count() > 0) config.zoom_scale = scale;
    if (!config.zoom_rect) throw ValidationFailure("zoom needs --rect x,y,w,h");
    if (!config.zoom_scale) throw ValidationFailure("zoom needs --scale");
    if (!(*config.zoom_scale > 0.0)) throw ValidationFailure("--scale must be positive");

    const Image img = read_image(input);
    const Image zoomed = zoom_region(img, ZoomSpec{*config.zoom_rect, *config.zoom_scale});
    const fs::path output = g.output.empty() ? fs::path(img.channels() == 3 ? "zoom.ppm" : "zoom.pgm")
                                             : fs::path(g.output);
    format_for(output, zoomed);

    std::optional<double> db;
    if (!truth_path.empty()) {
        const Image truth = read_image(truth_path);
        if (!truth.same_shape(zoomed)) {
            throw ValidationFailure("ground truth '" + truth_path + "' is " + size_str(truth) +
                                    " but the zoomed crop is " + size_str(zoomed));
        }
        db = psnr(zoomed, truth, zoomed.max_val());
    }

    OutputSet files;
    files.add(output, zoomed);
    files.commit();
    out << "width=" << zoomed.width() << "\nheight=" << zoomed.height() << '\n';
    if (db) out << "psnr=" << format_metric(*db) << '\n';
    return kExitOk;
}

int cmd_decompose(const GlobalOptions& g, const std::string& input, std::ostream& err) {
    const CliConfig config = effective_config(g, err);
    const Image img = read_image(input);
    const LayerPair layers = decompose(img, config.fusion.avg_filter_size);
    const fs::path output = g.output.empty() ? fs::path("layers.pgm") : fs::path(g.output);

    OutputSet files;
    files.add(with_suffix(output, "_base", img), layers.base);
    files.add(with_suffix(output, "_detail", img), detail_for_display(layers.detail, img.max_val()));
    files.commit();
    return kExitOk;
}

int cmd_metrics(const GlobalOptions& g, const std::string& input, const std::string& reference_path, bool csv,
                std::ostream& out, std::ostream& err) {
    const CliConfig config = effective_config(g, err);
    const Image img = read_image(input);
    std::optional<Image> reference;
    if (!reference_path.empty()) {
        reference = read_image(reference_path);
        if (!reference->same_shape(img)) {
            throw ValidationFailure("reference '" + reference_path + "' is " + size_str(*reference) + " but '" +
                                    input + "' is " + size_str(img));
        }
    }
    const MetricsReport r = report(img, reference ? &*reference : nullptr, config.priors);
    out << (csv ? format_report_csv(r) : format_report_lines(r));
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-scale image fusion with local edge-preserving weights, bilinear zoom and quality metrics",
                 "lepfuse"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("-o,--output", g.output, "Output image path");
    app.add_option("--config", g.config_path, "Flat key=value configuration file");
    app.add_flag("--verbose", g.verbose, "Print the effective configuration");
    app.add_flag("--dump-intermediates", g.dump, "Also write layers, saliency and weight maps");
    for (const auto& key : setting_keys()) {
        if (key == "rect" || key == "scale" || key == "dump_intermediates") continue;
        g.setting_opts[key] = app.add_option("--" + dashed(key), g.settings[key])->group("Tuning");
    }

    std::vector<std::string> fuse_inputs;
    auto* fuse_cmd = app.add_subcommand("fuse", "Fuse registered source images");
    fuse_cmd->add_option("inputs", fuse_inputs, "Source images (PGM/PPM)")->required();
    fuse_cmd->fallthrough();

    std::string zoom_input, rect_text, truth_path;
    double scale = 0.0;
    auto* zoom_cmd = app.add_subcommand("zoom", "Crop a region and enlarge it with bilinear interpolation");
    zoom_cmd->add_option("input", zoom_input, "Input image")->required();
    auto* rect_opt = zoom_cmd->add_option("--rect", rect_text, "Crop region x,y,w,h");
    auto* scale_opt = zoom_cmd->add_option("--scale", scale, "Magnification per axis");
    zoom_cmd->add_option("--psnr-against", truth_path, "Ground-truth image for a PSNR report");
    zoom_cmd->fallthrough();

    std::string decompose_input;
    auto* decompose_cmd = app.add_subcommand("decompose", "Write the base and detail layers of one image");
    decompose_cmd->add_option("input", decompose_input, "Input image")->required();
    decompose_cmd->fallthrough();

    std::string metrics_input, reference_path;
    bool csv = false;
    auto* metrics_cmd = app.add_subcommand("metrics", "Report sharpness, naturalness, PSNR and SSIM");
    metrics_cmd->add_option("input", metrics_input, "Image to evaluate")->required();
    metrics_cmd->add_option("--reference", reference_path, "Reference image for PSNR and SSIM");
    metrics_cmd->add_flag("--csv", csv, "Print one CSV record instead of key=value lines");
    metrics_cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "lepfuse: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        if (*fuse_cmd) return cmd_fuse(g, fuse_inputs, out, err);
        if (*zoom_cmd) return cmd_zoom(g, zoom_input, rect_text, rect_opt, scale, scale_opt, truth_path, out, err);
        if (*decompose_cmd) return cmd_decompose(g, decompose_input, err);
        if (*metrics_cmd) return cmd_metrics(g, metrics_input, reference_path, csv, out, err);
    } catch (const IoError& e) {
        err << "lepfuse: " << e.what() << '\n';
        return kExitIo;
    } catch (const ParseError& e) {
        err << "lepfuse: " << e.what() << '\n';
        return kExitIo;
    } catch (const UnsupportedFormat& e) {
        err << "lepfuse: " << e.what() << '\n';
        return kExitIo;
    } catch (const ValidationFailure& e) {
        err << "lepfuse: " << e.what() << '\n';
        return kExitValidation;
    } catch (const InvalidArgument& e) {
        err << "lepfuse: " << e.what() << '\n';
        return kExitValidation;
    } catch (const BoundsError& e) {
        err << "lepfuse: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitValidation;
}

}  // namespace lepfusion
