#pragma once

// nlohmann::json bindings for the library's value types.

#include "json.hpp"
#include "wavemark/attacks.hpp"
#include "wavemark/embedder.hpp"
#include "wavemark/metrics.hpp"
#include "wavemark/report.hpp"

namespace wavemark {

void to_json(nlohmann::json& j, const EmbedParams& p);
void from_json(const nlohmann::json& j, EmbedParams& p);

// {"kind": "gaussian_noise", "mean": 0, "variance": 0.001, "seed": 7}; missing
// parameters take their defaults, "seed" is optional.
void to_json(nlohmann::json& j, const AttackSpec& spec);
void from_json(const nlohmann::json& j, AttackSpec& spec);

void to_json(nlohmann::json& j, const SimilarityMode& mode);
void from_json(const nlohmann::json& j, SimilarityMode& mode);

// Decibel values that may be infinite are written as the string "inf".
nlohmann::json decibels_to_json(double db);
double decibels_from_json(const nlohmann::json& j);

}  // namespace wavemark
