#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "pdsample/model.hpp"

namespace pdsample {

nlohmann::json instance_to_json(const BipInstance& inst);
/// Rejects unknown keys, inconsistent shapes and non-finite numbers with InputError.
BipInstance instance_from_json(const nlohmann::json& j);

void write_instance(const BipInstance& inst, const std::filesystem::path& path);
BipInstance read_instance(const std::filesystem::path& path);

bool structurally_equal(const BipInstance& a, const BipInstance& b);

}  // namespace pdsample
