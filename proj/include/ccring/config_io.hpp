#pragma once

#include <filesystem>
#include <string>

#include "ccring/config.hpp"

namespace ccring {

// Line-oriented key = value format, sequences space-separated, '#' comments.
// Field names match SystemConfig; gamma, kappa and n_max are optional
// (defaults 0, 0, 1).
SystemConfig parse_config_text(const std::string& text);
SystemConfig parse_config_file(const std::filesystem::path& path);

}  // namespace ccring
