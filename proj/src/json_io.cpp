#include "wavemark/json_io.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wavemark/error.hpp"

namespace wavemark {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ConfigError, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

void to_json(json& j, const EmbedParams& p) {
  j = json{{"wavelet", std::string(to_string(p.wavelet))},
           {"alpha_ll", p.alpha_ll},
           {"alpha_hh", p.alpha_hh},
           {"alpha_nest", p.alpha_nest},
           {"offset_row", p.offset_row},
           {"offset_col", p.offset_col}};
}

void from_json(const json& j, EmbedParams& p) {
  if (!j.is_object()) throw Error(ErrorKind::ConfigError, "embed parameters must be an object");
  const EmbedParams d;
  p.wavelet = parse_wavelet(get_or<std::string>(j, "wavelet", std::string(to_string(d.wavelet))));
  p.alpha_ll = get_or(j, "alpha_ll", d.alpha_ll);
  p.alpha_hh = get_or(j, "alpha_hh", d.alpha_hh);
  p.alpha_nest = get_or(j, "alpha_nest", d.alpha_nest);
  p.offset_row = get_or(j, "offset_row", d.offset_row);
  p.offset_col = get_or(j, "offset_col", d.offset_col);
}

void to_json(json& j, const AttackSpec& spec) {
  j = json{{"kind", std::string(attack_name(spec))}};
  std::visit(overloaded{
                 [](const attack::Identity&) {},
                 [&](const attack::IntensityAdjust& p) { j["gamma"] = p.gamma; },
                 [&](const attack::GammaCorrection& p) {
                   j["low_in"] = p.low_in;
                   j["high_in"] = p.high_in;
                   j["low_out"] = p.low_out;
                   j["high_out"] = p.high_out;
                 },
                 [](const attack::HistogramEqualization&) {},
                 [&](const attack::LowPass& p) { j["size"] = p.size; },
                 [&](const attack::Resize& p) { j["scale"] = p.scale; },
                 [&](const attack::GaussianNoise& p) {
                   j["mean"] = p.mean;
                   j["variance"] = p.variance;
                 },
                 [&](const attack::HighPass& p) { j["alpha"] = p.alpha; },
                 [&](const attack::JpegCompress& p) { j["quality"] = p.quality; },
             },
             spec.params);
  if (spec.seed) j["seed"] = *spec.seed;
}

void from_json(const json& j, AttackSpec& spec) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw Error(ErrorKind::ConfigError, "attack entries need a string 'kind'");
  }
  spec = make_attack(j.at("kind").get<std::string>());
  std::visit(overloaded{
                 [](attack::Identity&) {},
                 [&](attack::IntensityAdjust& p) { p.gamma = get_or(j, "gamma", p.gamma); },
                 [&](attack::GammaCorrection& p) {
                   p.low_in = get_or(j, "low_in", p.low_in);
                   p.high_in = get_or(j, "high_in", p.high_in);
                   p.low_out = get_or(j, "low_out", p.low_out);
                   p.high_out = get_or(j, "high_out", p.high_out);
                 },
                 [](attack::HistogramEqualization&) {},
                 [&](attack::LowPass& p) { p.size = get_or(j, "size", p.size); },
                 [&](attack::Resize& p) { p.scale = get_or(j, "scale", p.scale); },
                 [&](attack::GaussianNoise& p) {
                   p.mean = get_or(j, "mean", p.mean);
                   p.variance = get_or(j, "variance", p.variance);
                 },
                 [&](attack::HighPass& p) { p.alpha = get_or(j, "alpha", p.alpha); },
                 [&](attack::JpegCompress& p) { p.quality = get_or(j, "quality", p.quality); },
             },
             spec.params);
  if (j.contains("seed")) spec.seed = get_or<std::uint64_t>(j, "seed", 0);
  validate(spec);
}

void to_json(json& j, const SimilarityMode& mode) { j = to_string(mode); }

void from_json(const json& j, SimilarityMode& mode) {
  if (!j.is_string()) throw Error(ErrorKind::ConfigError, "similarity mode must be a string");
  mode = parse_similarity_mode(j.get<std::string>());
}

json decibels_to_json(double db) {
  if (std::isinf(db)) return db > 0 ? "inf" : "-inf";
  return db;
}

double decibels_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw Error(ErrorKind::ConfigError, "bad decibel value '" + s + "'");
  }
  return j.get<double>();
}

}  // namespace wavemark
