#include "wavemark/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "wavemark/error.hpp"
#include "wavemark/json_io.hpp"

namespace wavemark {

using nlohmann::json;

std::filesystem::path RunConfig::resolve(const std::string& path) const {
  const std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p;
  return base_dir / p;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.cover == b.cover && a.primary == b.primary && a.secondary == b.secondary &&
         a.output_dir == b.output_dir && a.embed == b.embed && a.attacks == b.attacks && a.formats == b.formats &&
         a.seed == b.seed && a.similarity == b.similarity && a.paper_literal_alphas == b.paper_literal_alphas &&
         a.resize_secondary == b.resize_secondary && a.parallel == b.parallel;
}

void to_json(json& j, const RunConfig& c) {
  j = json{{"schema", std::string(kConfigSchema)},
           {"cover", c.cover},
           {"primary", c.primary},
           {"secondary", c.secondary},
           {"output_dir", c.output_dir},
           {"embed", c.embed},
           {"attacks", c.attacks},
           {"formats", c.formats},
           {"seed", c.seed},
           {"similarity", c.similarity},
           {"paper_literal_alphas", c.paper_literal_alphas},
           {"resize_secondary", c.resize_secondary},
           {"parallel", c.parallel}};
}

void from_json(const json& j, RunConfig& c) {
  if (!j.is_object()) throw Error(ErrorKind::ConfigError, "config must be a JSON object");
  if (j.value("schema", "") != kConfigSchema) {
    throw Error(ErrorKind::ConfigError, "config schema must be \"" + std::string(kConfigSchema) + "\"");
  }
  try {
    RunConfig d;
    c.cover = j.at("cover").get<std::string>();
    c.primary = j.at("primary").get<std::string>();
    c.secondary = j.at("secondary").get<std::string>();
    c.output_dir = j.value("output_dir", d.output_dir);
    c.embed = j.contains("embed") ? j.at("embed").get<EmbedParams>() : d.embed;
    c.attacks = j.contains("attacks") ? j.at("attacks").get<std::vector<AttackSpec>>() : d.attacks;
    c.formats = j.value("formats", d.formats);
    c.seed = j.value("seed", d.seed);
    c.similarity = j.contains("similarity") ? j.at("similarity").get<SimilarityMode>() : d.similarity;
    c.paper_literal_alphas = j.value("paper_literal_alphas", d.paper_literal_alphas);
    c.resize_secondary = j.value("resize_secondary", d.resize_secondary);
    c.parallel = j.value("parallel", d.parallel);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ConfigError, e.what());
  } catch (const Error& e) {
    throw Error(ErrorKind::ConfigError, e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FileNotFound, path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ConfigError, path.string() + ": " + e.what());
  }
  RunConfig config = doc.get<RunConfig>();
  config.base_dir = path.parent_path();
  return config;
}

void save_config(const RunConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << json(config).dump(2) << '\n';
}

void validate_inputs(const RunConfig& config) {
  for (const std::string* p : {&config.cover, &config.primary, &config.secondary}) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(config.resolve(*p), ec)) {
      throw Error(ErrorKind::FileNotFound, config.resolve(*p).string());
    }
  }
  for (const auto& f : config.formats) {
    if (f != "csv" && f != "json" && f != "markdown") {
      throw Error(ErrorKind::ConfigError, "unknown report format '" + f + "'");
    }
  }
  validate(config.embed);
}

}  // namespace wavemark
