#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "assort/mnl.hpp"

namespace assort {

// {"revenues": [...], "utilities": [...]}
nlohmann::json instance_to_json(const Instance& instance);

/// Validates shape and values; NaN (serialized as null), negative or
/// out-of-range entries are rejected with InvalidInstance.
Instance instance_from_json(const nlohmann::json& j);

void save_instance(const Instance& instance, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

} // namespace assort
