#include "lepfusion/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lepfusion {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

int to_int(const std::string& key, std::string_view text) {
    int value = 0;
    const auto t = trim(text);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw InvalidArgument("setting '" + key + "' expects an integer, got '" + std::string(text) + "'");
    }
    return value;
}

double to_double(const std::string& key, std::string_view text) {
    const std::string t(trim(text));
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(t, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (t.empty() || used != t.size() || !std::isfinite(value)) {
        throw InvalidArgument("setting '" + key + "' expects a number, got '" + t + "'");
    }
    return value;
}

bool to_bool(const std::string& key, std::string_view text) {
    const auto t = trim(text);
    if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
    if (t == "0" || t == "false" || t == "no" || t == "off") return false;
    throw InvalidArgument("setting '" + key + "' expects true/false, got '" + std::string(text) + "'");
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

const std::vector<std::string>& setting_keys() {
    static const std::vector<std::string> keys = {
        "avg_filter_size",    "saliency_radius",     "saliency_sigma",  "base_radius",
        "base_alpha",         "base_beta",           "detail_radius",   "detail_alpha",
        "detail_beta",        "weight_floor",        "refine",          "guided_base_eps",
        "guided_detail_eps",  "naturalness_mean",    "naturalness_mean_tau",
        "naturalness_stddev", "naturalness_stddev_tau", "rect",         "scale",
        "dump_intermediates",
    };
    return keys;
}

std::vector<Setting> parse_settings(std::string_view text) {
    std::vector<Setting> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw InvalidArgument("config line " + std::to_string(line_no) + ": expected key=value");
        }
        const auto key = trim(line.substr(0, eq));
        if (key.empty()) throw InvalidArgument("config line " + std::to_string(line_no) + ": empty key");
        out.emplace_back(std::string(key), std::string(trim(line.substr(eq + 1))));
    }
    return out;
}

std::vector<Setting> load_settings(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_settings(buf.str());
}

Rect parse_rect(std::string_view text) {
    int parts[4] = {0, 0, 0, 0};
    std::string_view rest = text;
    for (int i = 0; i < 4; ++i) {
        const auto comma = rest.find(',');
        if ((i < 3) == (comma == std::string_view::npos)) {
            throw InvalidArgument("rect must be x,y,w,h, got '" + std::string(text) + "'");
        }
        parts[i] = to_int("rect", rest.substr(0, comma));
        rest = i < 3 ? rest.substr(comma + 1) : std::string_view{};
    }
    Rect r{parts[0], parts[1], parts[2], parts[3]};
    if (r.x0 < 0 || r.y0 < 0 || r.width < 1 || r.height < 1) {
        throw InvalidArgument("rect needs non-negative offsets and positive size, got '" + std::string(text) + "'");
    }
    return r;
}

void apply_setting(CliConfig& c, const std::string& key, const std::string& value) {
    FusionConfig& f = c.fusion;
    if (key == "avg_filter_size") f.avg_filter_size = to_int(key, value);
    else if (key == "saliency_radius") f.saliency_radius = to_int(key, value);
    else if (key == "saliency_sigma") f.saliency_sigma = to_double(key, value);
    else if (key == "base_radius") f.base_params.radius = to_int(key, value);
    else if (key == "base_alpha") f.base_params.alpha = to_double(key, value);
    else if (key == "base_beta") f.base_params.beta = to_double(key, value);
    else if (key == "detail_radius") f.detail_params.radius = to_int(key, value);
    else if (key == "detail_alpha") f.detail_params.alpha = to_double(key, value);
    else if (key == "detail_beta") f.detail_params.beta = to_double(key, value);
    else if (key == "weight_floor") f.weight_floor = to_double(key, value);
    else if (key == "refine") {
        const auto v = trim(value);
        if (v == "lep") f.refine = RefineMethod::lep;
        else if (v == "guided") f.refine = RefineMethod::guided;
        else throw InvalidArgument("setting 'refine' must be 'lep' or 'guided', got '" + value + "'");
    }
    else if (key == "guided_base_eps") f.guided_base_eps = to_double(key, value);
    else if (key == "guided_detail_eps") f.guided_detail_eps = to_double(key, value);
    else if (key == "naturalness_mean") c.priors.mean = to_double(key, value);
    else if (key == "naturalness_mean_tau") c.priors.mean_tau = to_double(key, value);
    else if (key == "naturalness_stddev") c.priors.stddev = to_double(key, value);
    else if (key == "naturalness_stddev_tau") c.priors.stddev_tau = to_double(key, value);
    else if (key == "rect") c.zoom_rect = parse_rect(value);
    else if (key == "scale") c.zoom_scale = to_double(key, value);
    else if (key == "dump_intermediates") c.dump_intermediates = to_bool(key, value);
    else throw InvalidArgument("unknown setting '" + key + "'");
}

std::string describe(const CliConfig& c) {
    const FusionConfig& f = c.fusion;
    std::ostringstream os;
    os << "avg_filter_size=" << f.avg_filter_size << '\n'
       << "saliency_radius=" << f.saliency_radius << '\n'
       << "saliency_sigma=" << num(f.saliency_sigma) << '\n'
       << "base_radius=" << f.base_params.radius << '\n'
       << "base_alpha=" << num(f.base_params.alpha) << '\n'
       << "base_beta=" << num(f.base_params.beta) << '\n'
       << "detail_radius=" << f.detail_params.radius << '\n'
       << "detail_alpha=" << num(f.detail_params.alpha) << '\n'
       << "detail_beta=" << num(f.detail_params.beta) << '\n'
       << "weight_floor=" << num(f.weight_floor) << '\n'
       << "refine=" << (f.refine == RefineMethod::lep ? "lep" : "guided") << '\n'
       << "guided_base_eps=" << num(f.guided_base_eps) << '\n'
       << "guided_detail_eps=" << num(f.guided_detail_eps) << '\n'
       << "naturalness_mean=" << num(c.priors.mean) << '\n'
       << "naturalness_mean_tau=" << num(c.priors.mean_tau) << '\n'
       << "naturalness_stddev=" << num(c.priors.stddev) << '\n'
       << "naturalness_stddev_tau=" << num(c.priors.stddev_tau) << '\n';
    if (c.zoom_rect) {
        const Rect& r = *c.zoom_rect;
        os << "rect=" << r.x0 << ',' << r.y0 << ',' << r.width << ',' << r.height << '\n';
    }
    if (c.zoom_scale) os << "scale=" << num(*c.zoom_scale) << '\n';
    os << "dump_intermediates=" << (c.dump_intermediates ? "true" : "false") << '\n';
    return os.str();
}

}  // namespace lepfusion
