#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "gabp/classifier.hpp"
#include "gabp/dataset.hpp"

namespace gabp {

/// On-disk record of a trained model: the model itself plus the optional
/// feature-scaling transform queries must pass through and a provenance
/// note. Serialization is lossless; a reloaded model predicts identically.
struct ModelFile {
    TrainedModel model;
    std::optional<ScalingParams> scaling;
    std::string provenance;
};

nlohmann::ordered_json model_to_json(const ModelFile& file);
ModelFile model_from_json(const nlohmann::ordered_json& j);

void save_model(const std::filesystem::path& path, const ModelFile& file);
ModelFile load_model(const std::filesystem::path& path);

}  // namespace gabp
