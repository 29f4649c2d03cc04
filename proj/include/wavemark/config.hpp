#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "wavemark/attacks.hpp"
#include "wavemark/embedder.hpp"
#include "wavemark/metrics.hpp"

namespace wavemark {

inline constexpr std::string_view kConfigSchema = "wavemark-config/1";

// Pipeline configuration as read from JSON. Paths are kept exactly as written;
// resolve() interprets relative ones against the config file's directory.
struct RunConfig {
  std::string cover;
  std::string primary;
  std::string secondary;
  std::string output_dir = "out";
  EmbedParams embed;
  std::vector<AttackSpec> attacks = default_attack_matrix();
  std::vector<std::string> formats = {"csv", "json", "markdown"};
  std::uint64_t seed = 42;
  SimilarityMode similarity = SimilarityMode::binary();
  bool paper_literal_alphas = false;
  // Bilinearly resize the secondary to half the primary instead of failing.
  bool resize_secondary = false;
  bool parallel = true;

  // Directory relative paths are resolved against. Not serialised.
  std::filesystem::path base_dir;

  std::filesystem::path resolve(const std::string& path) const;

  friend bool operator==(const RunConfig& a, const RunConfig& b);
};

void to_json(nlohmann::json& j, const RunConfig& config);
void from_json(const nlohmann::json& j, RunConfig& config);

// Parses and checks schema and field types. ConfigError / FileNotFound on failure.
RunConfig load_config(const std::filesystem::path& path);
void save_config(const RunConfig& config, const std::filesystem::path& path);

// FileNotFound naming the first missing input; ConfigError for unknown report formats.
void validate_inputs(const RunConfig& config);

}  // namespace wavemark
