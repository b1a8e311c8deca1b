#pragma once

// JSON loaders for plant and scenario files. Keys starting with '_' are
// annotations and ignored; any other unknown key is a ConfigError.

#include <filesystem>
#include <string_view>

#include "greybox/plant.h"

namespace greybox {

PlantConfig parse_plant_config(std::string_view json_text);
PlantConfig load_plant_config(const std::filesystem::path& path);

// Relative CSV paths inside boundary specs resolve against `base_dir`.
Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace greybox
