#pragma once

#include <filesystem>

#include "json.hpp"
#include "logeuler/eos.hpp"

namespace logeuler {

/// JSON layout: {"family": "...", "A": ..., "K1": ..., "K": ..., "c": ...}.
void to_json(nlohmann::json& j, const EosSpec& eos);
void from_json(const nlohmann::json& j, EosSpec& eos);

EosSpec load_eos_file(const std::filesystem::path& path);

/// Parses a whole file as JSON, mapping parse failures to ConfigError.
nlohmann::json load_json_file(const std::filesystem::path& path);

}  // namespace logeuler
