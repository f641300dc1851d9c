#pragma once

#include <filesystem>
#include <string>

#include "agekit/classifier.hpp"

namespace agekit {

inline constexpr int kModelFormatVersion = 1;

/// Versioned JSON model document. load(save(m)) yields identical
/// predictions on any input. Throws VersionMismatch for a different
/// format_version and CorruptModel for anything structurally wrong.
std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const std::string& text);

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace agekit
