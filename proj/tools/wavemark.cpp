// wavemark: nested DWT watermarking pipeline from the command line.
//
// Exit codes: 0 success, 2 usage or configuration error, 3 processing error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wavemark/attacks.hpp"
#include "wavemark/config.hpp"
#include "wavemark/embedder.hpp"
#include "wavemark/error.hpp"
#include "wavemark/extractor.hpp"
#include "wavemark/fixtures.hpp"
#include "wavemark/imageio.hpp"
#include "wavemark/json_io.hpp"
#include "wavemark/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wavemark;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitProcessing = 3;

// Raised for problems with the invocation itself; always exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StageError : std::runtime_error {
  StageError(std::string stage, const Error& e)
      : std::runtime_error(e.what()), stage(std::move(stage)), kind(e.kind()) {}
  std::string stage;
  ErrorKind kind;
};

template <class F>
auto stage(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw StageError(name, e);
  }
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::FileNotFound:
    case ErrorKind::ConfigError:
    case ErrorKind::DimensionMismatch:
      return kExitConfig;
    default:
      return kExitProcessing;
  }
}

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> jpeg_quality;
  bool paper_literal_alphas = false;
  std::optional<std::string> wavelet;
  std::optional<std::string> out;
};

void add_common(CLI::App* cmd, Overrides& o, bool needs_config) {
  auto* cfg = cmd->add_option("--config", o.config, "Run configuration (JSON, schema wavemark-config/1)");
  if (needs_config) cfg->required();
  cmd->add_option("--seed", o.seed, "Run seed for noise attacks (default: config seed)");
  cmd->add_option("--jpeg-quality", o.jpeg_quality, "Override JPEG attack quality, 1-100 (default: 75)")
      ->check(CLI::Range(1, 100));
  cmd->add_flag("--paper-literal-alphas", o.paper_literal_alphas,
                "Also score extraction with the literal divisors 3 (LL) and 1 (HH)");
  cmd->add_option("--wavelet", o.wavelet, "Wavelet: haar or db2 (default: config wavelet, haar)")
      ->check(CLI::IsMember({"haar", "db1", "db2"}));
  cmd->add_option("--out", o.out, "Output directory (default: config output_dir)");
}

// Anything wrong while reading or checking the configuration is a config
// error (exit 2), whatever the underlying kind.
RunConfig resolve_config(const Overrides& o) {
  RunConfig config;
  try {
    config = load_config(o.config);
    if (o.seed) config.seed = *o.seed;
    if (o.wavelet) config.embed.wavelet = parse_wavelet(*o.wavelet);
    if (o.paper_literal_alphas) config.paper_literal_alphas = true;
    if (o.jpeg_quality) {
      for (auto& spec : config.attacks) {
        if (auto* jpeg = std::get_if<attack::JpegCompress>(&spec.params)) jpeg->quality = *o.jpeg_quality;
      }
    }
    validate_inputs(config);
  } catch (const Error& e) {
    const ErrorKind kind = e.kind() == ErrorKind::FileNotFound ? e.kind() : ErrorKind::ConfigError;
    throw StageError("config", Error(kind, e.detail()));
  }
  for (const auto& w : warnings(config.embed)) std::cerr << "wavemark: warning: " << w << '\n';
  return config;
}

fs::path output_dir(const RunConfig& config, const Overrides& o) {
  fs::path dir = o.out ? fs::path(*o.out) : config.resolve(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw StageError("output", Error(ErrorKind::IoError, "cannot create " + dir.string()));
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StageError("output", Error(ErrorKind::IoError, "cannot write " + path.string()));
  out << text;
}

struct Inputs {
  GrayImage cover;
  GrayImage primary;
  GrayImage secondary;
};

Inputs load_inputs(const RunConfig& config) {
  return stage("load", [&] {
    Inputs in{load_image(config.resolve(config.cover)), load_image(config.resolve(config.primary)),
              load_image(config.resolve(config.secondary))};
    const std::size_t w = in.primary.width() / 2;
    const std::size_t h = in.primary.height() / 2;
    if (config.resize_secondary && (in.secondary.width() != w || in.secondary.height() != h)) {
      in.secondary = resize(in.secondary, w, h, ResizeMethod::Bilinear);
    }
    return in;
  });
}

json fidelity_json(const EmbedFidelity& f) {
  return json{{"psnr1", decibels_to_json(f.psnr1)},
              {"mse1", f.mse1},
              {"psnr2", decibels_to_json(f.psnr2)},
              {"mse2", f.mse2}};
}

// --- subcommands -------------------------------------------------------------

int cmd_fixtures(const Overrides& o) {
  const fs::path dir = o.out.value_or("fixtures");
  stage("fixtures", [&] { fixtures::write_fixtures(dir); });
  std::cout << "wrote fixtures to " << dir.string() << '\n';
  return kExitOk;
}

int cmd_embed(const Overrides& o, const std::string& format) {
  const RunConfig config = resolve_config(o);
  const Inputs in = load_inputs(config);
  const NestedWatermark nested = stage("nest", [&] { return nest_watermarks(in.primary, in.secondary, config.embed); });
  const GrayImage watermarked = stage("embed", [&] { return embed_into_cover(in.cover, nested, config.embed); });
  const EmbedFidelity fidelity = measure_fidelity(in.cover, in.primary, nested, watermarked);

  const fs::path dir = output_dir(config, o);
  stage("output", [&] {
    save_image(watermarked, dir / ("watermarked." + format));
    save_image(nested.image, dir / "nested.pgm");
  });
  json doc = fidelity_json(fidelity);
  doc["embed"] = config.embed;
  doc["capacity_bits"] = capacity_bits(in.cover, nested.primary_dims, true);
  write_text(dir / "fidelity.json", doc.dump(2) + "\n");
  std::cout << "psnr1 " << format_decibels(fidelity.psnr1) << " dB, psnr2 " << format_decibels(fidelity.psnr2)
            << " dB -> " << (dir / ("watermarked." + format)).string() << '\n';
  return kExitOk;
}

int cmd_extract(const Overrides& o, const std::string& input_arg) {
  const RunConfig config = resolve_config(o);
  const Inputs in = load_inputs(config);
  const fs::path dir = output_dir(config, o);
  const fs::path input = input_arg.empty() ? dir / "watermarked.pgm" : fs::path(input_arg);
  const GrayImage suspect = stage("load", [&] { return load_image(input); });
  const NestedWatermark nested = stage("nest", [&] { return nest_watermarks(in.primary, in.secondary, config.embed); });
  const PixelDims dims = nested.primary_dims;

  ExtractionResult result = stage("extract", [&] { return extract_watermark(suspect, in.cover, config.embed, dims); });
  score(result, nested.image, config.similarity);
  const GrayImage secondary = stage("denest", [&] { return denest_secondary(result.ll_estimate, in.primary, config.embed); });

  json doc{{"sr_ll", *result.sr_ll},
           {"sr_hh", *result.sr_hh},
           {"sr_secondary", similarity_ratio(secondary, in.secondary, config.similarity)},
           {"similarity", config.similarity}};
  if (config.paper_literal_alphas) {
    ExtractionResult literal = stage("extract", [&] {
      return extract_watermark(suspect, in.cover, config.embed, dims, literal_attack_divisors());
    });
    score(literal, nested.image, config.similarity);
    doc["sr_ll_paperalpha"] = *literal.sr_ll;
    doc["sr_hh_paperalpha"] = *literal.sr_hh;
  }
  stage("output", [&] {
    save_image(result.ll_rendering, dir / "ll_estimate.pgm");
    save_image(result.hh_rendering, dir / "hh_estimate.pgm");
    save_image(secondary, dir / "secondary_estimate.pgm");
  });
  write_text(dir / "extract.json", doc.dump(2) + "\n");
  std::cout << "sr_ll " << *result.sr_ll << ", sr_hh " << *result.sr_hh << '\n';
  return kExitOk;
}

AttackSpec parse_attack_spec(const std::string& name, const std::string& spec_arg) {
  if (!spec_arg.empty()) {
    std::string text = spec_arg;
    if (spec_arg.front() != '{') {
      std::ifstream in(spec_arg);
      if (!in) throw StageError("config", Error(ErrorKind::FileNotFound, spec_arg));
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    return stage("config", [&] {
      try {
        return json::parse(text).get<AttackSpec>();
      } catch (const json::exception& e) {
        throw Error(ErrorKind::ConfigError, std::string("attack spec: ") + e.what());
      } catch (const Error& e) {
        throw Error(ErrorKind::ConfigError, "attack spec: " + e.detail());
      }
    });
  }
  if (name.empty()) throw UsageError("attack: give --attack NAME or --spec JSON");
  return stage("config", [&] {
    try {
      return make_attack(name);
    } catch (const Error& e) {
      throw Error(ErrorKind::ConfigError, e.detail());
    }
  });
}

int cmd_attack(const Overrides& o, const std::string& input, const std::string& name, const std::string& spec_arg) {
  AttackSpec spec = parse_attack_spec(name, spec_arg);
  if (o.jpeg_quality) {
    if (auto* jpeg = std::get_if<attack::JpegCompress>(&spec.params)) jpeg->quality = *o.jpeg_quality;
  }
  const std::uint64_t seed = o.seed.value_or(0);
  const GrayImage img = stage("load", [&] { return load_image(input); });
  const GrayImage attacked = stage("attack", [&] { return apply_attack(img, spec, seed); });
  const double db = attack_psnr(img, attacked);

  const fs::path dir = o.out.value_or(".");
  std::error_code ec;
  fs::create_directories(dir, ec);
  stage("output", [&] { save_image(attacked, dir / "attacked.pgm"); });
  json doc{{"attack", std::string(attack_name(spec))},
           {"spec", spec},
           {"params", describe_params(spec, seed)},
           {"psnr_db", decibels_to_json(db)}};
  write_text(dir / "attack.json", doc.dump(2) + "\n");
  std::cout << attack_name(spec) << ": psnr " << format_decibels(db) << " dB\n";
  return kExitOk;
}

void write_report(const EvaluationReport& report, const std::vector<std::string>& formats, const fs::path& dir) {
  for (const auto& f : formats) {
    if (f == "csv") write_text(dir / "report.csv", to_csv(report));
    if (f == "json") write_text(dir / "report.json", to_json_text(report));
    if (f == "markdown") write_text(dir / "report.md", to_markdown(report));
  }
}

int cmd_evaluate(const Overrides& o, std::optional<bool> parallel) {
  RunConfig config = resolve_config(o);
  if (parallel) config.parallel = *parallel;
  const Inputs in = load_inputs(config);
  ReportOptions options;
  options.similarity = config.similarity;
  options.seed = config.seed;
  options.literal_divisors = config.paper_literal_alphas;
  options.parallel = config.parallel;
  const EvaluationReport report = stage("evaluate", [&] {
    return build_report(in.cover, in.primary, in.secondary, config.embed, config.attacks, options);
  });
  const fs::path dir = output_dir(config, o);
  write_report(report, config.formats, dir);
  std::cout << to_markdown(report);
  return kExitOk;
}

int cmd_report(const Overrides& o, const std::string& input, const std::vector<std::string>& formats) {
  std::ifstream in(input);
  if (!in) throw StageError("load", Error(ErrorKind::FileNotFound, input));
  std::stringstream ss;
  ss << in.rdbuf();
  const EvaluationReport report = stage("load", [&] { return report_from_json_text(ss.str()); });
  const fs::path dir = o.out.value_or(".");
  std::error_code ec;
  fs::create_directories(dir, ec);
  write_report(report, formats, dir);
  std::cout << to_markdown(report);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wavemark - nested DWT watermark embedding, extraction and attack evaluation"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  Overrides o;
  std::string image_format = "pgm";
  std::string input;
  std::string attack_kind;
  std::string spec_arg;
  bool parallel_on = false;
  bool parallel_off = false;
  std::vector<std::string> formats = {"csv", "markdown"};

  auto* fixtures_cmd = app.add_subcommand("fixtures", "Write the synthetic cover, logos and a default config");
  fixtures_cmd->add_option("--out", o.out, "Directory to write fixtures into (default: fixtures)");

  auto* embed = app.add_subcommand("embed", "Nest the watermarks and embed them into the cover");
  add_common(embed, o, true);
  embed->add_option("--format", image_format, "Watermarked image format")->check(CLI::IsMember({"pgm", "png"}));

  auto* extract = app.add_subcommand("extract", "Extract LL/HH watermark estimates (non-blind)");
  add_common(extract, o, true);
  extract->add_option("--input", input, "Watermarked or attacked image (default: <out>/watermarked.pgm)");

  auto* attack_cmd = app.add_subcommand("attack", "Apply one attack to an image and report PSNR");
  add_common(attack_cmd, o, false);
  attack_cmd->add_option("--input", input, "Image to attack")->required();
  const auto names = attack_names();
  attack_cmd->add_option("--attack", attack_kind, "Attack name with default parameters")
      ->check(CLI::IsMember(std::vector<std::string>(names.begin(), names.end())));
  attack_cmd->add_option("--spec", spec_arg, "Attack spec as inline JSON or a JSON file");

  auto* evaluate = app.add_subcommand("evaluate", "Run the full attack matrix and write the report");
  add_common(evaluate, o, true);
  evaluate->add_flag("--parallel", parallel_on, "Evaluate attack rows concurrently (default: config)");
  evaluate->add_flag("--no-parallel", parallel_off, "Evaluate attack rows sequentially");

  auto* report_cmd = app.add_subcommand("report", "Re-render a JSON report as CSV / markdown");
  add_common(report_cmd, o, false);
  report_cmd->add_option("--input", input, "report.json written by evaluate")->required();
  report_cmd->add_option("--format", formats, "Formats to write: csv, json, markdown")
      ->check(CLI::IsMember({"csv", "json", "markdown"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*fixtures_cmd) return cmd_fixtures(o);
    if (*embed) return cmd_embed(o, image_format);
    if (*extract) return cmd_extract(o, input);
    if (*attack_cmd) return cmd_attack(o, input, attack_kind, spec_arg);
    if (*evaluate) {
      std::optional<bool> parallel;
      if (parallel_on) parallel = true;
      if (parallel_off) parallel = false;
      return cmd_evaluate(o, parallel);
    }
    if (*report_cmd) return cmd_report(o, input, formats);
  } catch (const UsageError& e) {
    std::cerr << "wavemark: " << e.what() << '\n';
    return kExitConfig;
  } catch (const StageError& e) {
    std::cerr << "wavemark: " << e.stage << ": " << e.what() << '\n';
    return exit_code_for(e.kind);
  } catch (const Error& e) {
    std::cerr << "wavemark: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "wavemark: " << e.what() << '\n';
    return kExitProcessing;
  }
  return kExitConfig;
}
