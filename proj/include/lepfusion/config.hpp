#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lepfusion/fusion.hpp"
#include "lepfusion/metrics.hpp"
#include "lepfusion/zoom.hpp"

namespace lepfusion {

/// Everything a CLI run can be configured with, from a config file or flags.
struct CliConfig {
    FusionConfig fusion;
    NaturalnessPriors priors;
    std::optional<Rect> zoom_rect;
    std::optional<double> zoom_scale;
    bool dump_intermediates = false;
};

using Setting = std::pair<std::string, std::string>;

/// Recognized setting keys, in the order `describe` prints them.
const std::vector<std::string>& setting_keys();

/// Parses flat `key = value` text; blank lines and `#` comments are ignored.
/// Throws InvalidArgument naming the line for anything else.
std::vector<Setting> parse_settings(std::string_view text);

/// Reads and parses a config file. Throws IoError if it cannot be read.
std::vector<Setting> load_settings(const std::filesystem::path& path);

/// Applies one setting. Throws InvalidArgument for unknown keys or bad values.
void apply_setting(CliConfig& config, const std::string& key, const std::string& value);

/// "x,y,w,h" with non-negative offsets and positive extent.
Rect parse_rect(std::string_view text);

/// Effective configuration as key=value lines.
std::string describe(const CliConfig& config);

}  // namespace lepfusion
