#include "wavemark/report.hpp"

#include <cstdio>
#include <future>
#include <sstream>

#include "wavemark/error.hpp"
#include "wavemark/extractor.hpp"
#include "wavemark/json_io.hpp"

namespace wavemark {

using nlohmann::json;

namespace {

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

Band parse_band(const std::string& s) {
  if (s == "LL") return Band::LL;
  if (s == "HH") return Band::HH;
  throw Error(ErrorKind::ConfigError, "bad band '" + s + "'");
}

ReportRow evaluate_row(const GrayImage& cover, const GrayImage& watermarked, const NestedWatermark& nested,
                       const EmbedParams& params, const AttackSpec& spec, const ReportOptions& options) {
  const GrayImage attacked = apply_attack(watermarked, spec, options.seed);
  const PixelDims dims{nested.image.width(), nested.image.height()};

  ExtractionResult extraction = extract_watermark(attacked, cover, params, dims);
  score(extraction, nested.image, options.similarity);

  ReportRow row;
  row.attack = std::string(attack_name(spec));
  row.params = describe_params(spec, options.seed);
  row.psnr_db = attack_psnr(cover, attacked);
  row.sr_ll = *extraction.sr_ll;
  row.sr_hh = *extraction.sr_hh;
  row.best_band = best_band(row.sr_ll, row.sr_hh);
  if (options.literal_divisors) {
    ExtractionResult literal = extract_watermark(attacked, cover, params, dims, literal_attack_divisors());
    score(literal, nested.image, options.similarity);
    row.sr_ll_literal = literal.sr_ll;
    row.sr_hh_literal = literal.sr_hh;
  }
  return row;
}

}  // namespace

std::string_view to_string(Band band) { return band == Band::LL ? "LL" : "HH"; }

Band best_band(double sr_ll, double sr_hh) { return sr_hh > sr_ll ? Band::HH : Band::LL; }

EmbedFidelity measure_fidelity(const GrayImage& cover, const GrayImage& primary,
                               const NestedWatermark& nested, const GrayImage& watermarked) {
  EmbedFidelity f;
  f.mse1 = mse(nested.image, primary);
  f.psnr1 = psnr_from_mse(f.mse1);
  f.mse2 = mse(watermarked, cover);
  f.psnr2 = psnr_from_mse(f.mse2);
  return f;
}

EvaluationReport build_report(const GrayImage& cover, const GrayImage& primary, const GrayImage& secondary,
                              const EmbedParams& params, const std::vector<AttackSpec>& attacks,
                              const ReportOptions& options) {
  validate(params);
  for (const auto& spec : attacks) validate(spec);

  const NestedWatermark nested = nest_watermarks(primary, secondary, params);
  const GrayImage watermarked = embed_into_cover(cover, nested, params);

  EvaluationReport report;
  report.fidelity = measure_fidelity(cover, primary, nested, watermarked);
  report.params = params;
  report.attacks = attacks;
  report.options = options;

  auto run_row = [&](std::size_t i) {
    try {
      return evaluate_row(cover, watermarked, nested, params, attacks[i], options);
    } catch (const Error& e) {
      throw Error(e.kind(), "attack row " + std::to_string(i) + " (" + std::string(attack_name(attacks[i])) +
                                "): " + e.detail());
    }
  };

  if (options.parallel && attacks.size() > 1) {
    std::vector<std::future<ReportRow>> pending;
    pending.reserve(attacks.size());
    for (std::size_t i = 0; i < attacks.size(); ++i) {
      pending.push_back(std::async(std::launch::async, run_row, i));
    }
    for (auto& f : pending) report.rows.push_back(f.get());
  } else {
    for (std::size_t i = 0; i < attacks.size(); ++i) report.rows.push_back(run_row(i));
  }
  return report;
}

std::string to_csv(const EvaluationReport& report) {
  std::ostringstream out;
  out << kCsvHeader;
  if (report.options.literal_divisors) out << ",sr_ll_paperalpha,sr_hh_paperalpha";
  out << '\n';
  for (const auto& row : report.rows) {
    out << row.attack << ',' << row.params << ',' << format_decibels(row.psnr_db) << ',' << fixed(row.sr_ll)
        << ',' << fixed(row.sr_hh) << ',' << to_string(row.best_band);
    if (report.options.literal_divisors) {
      out << ',' << fixed(row.sr_ll_literal.value_or(0.0)) << ',' << fixed(row.sr_hh_literal.value_or(0.0));
    }
    out << '\n';
  }
  return out.str();
}

std::string to_json_text(const EvaluationReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r{{"attack", row.attack},
           {"params", row.params},
           {"psnr_db", decibels_to_json(row.psnr_db)},
           {"sr_ll", row.sr_ll},
           {"sr_hh", row.sr_hh},
           {"best_band", std::string(to_string(row.best_band))}};
    if (row.sr_ll_literal) r["sr_ll_paperalpha"] = *row.sr_ll_literal;
    if (row.sr_hh_literal) r["sr_hh_paperalpha"] = *row.sr_hh_literal;
    rows.push_back(std::move(r));
  }
  const json doc{
      {"schema", std::string(kReportSchema)},
      {"config",
       {{"embed", report.params},
        {"attacks", report.attacks},
        {"seed", report.options.seed},
        {"similarity", report.options.similarity},
        {"paper_literal_alphas", report.options.literal_divisors}}},
      {"fidelity",
       {{"psnr1", decibels_to_json(report.fidelity.psnr1)},
        {"mse1", report.fidelity.mse1},
        {"psnr2", decibels_to_json(report.fidelity.psnr2)},
        {"mse2", report.fidelity.mse2}}},
      {"rows", rows},
  };
  return doc.dump(2) + "\n";
}

EvaluationReport report_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ConfigError, std::string("report is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("schema", "") != kReportSchema) {
    throw Error(ErrorKind::ConfigError, "report schema is not " + std::string(kReportSchema));
  }
  try {
    EvaluationReport report;
    const json& config = doc.at("config");
    report.params = config.at("embed").get<EmbedParams>();
    report.attacks = config.at("attacks").get<std::vector<AttackSpec>>();
    report.options.seed = config.at("seed").get<std::uint64_t>();
    report.options.similarity = config.at("similarity").get<SimilarityMode>();
    report.options.literal_divisors = config.at("paper_literal_alphas").get<bool>();
    const json& f = doc.at("fidelity");
    report.fidelity = {decibels_from_json(f.at("psnr1")), f.at("mse1").get<double>(),
                       decibels_from_json(f.at("psnr2")), f.at("mse2").get<double>()};
    for (const json& r : doc.at("rows")) {
      ReportRow row;
      row.attack = r.at("attack").get<std::string>();
      row.params = r.at("params").get<std::string>();
      row.psnr_db = decibels_from_json(r.at("psnr_db"));
      row.sr_ll = r.at("sr_ll").get<double>();
      row.sr_hh = r.at("sr_hh").get<double>();
      row.best_band = parse_band(r.at("best_band").get<std::string>());
      if (r.contains("sr_ll_paperalpha")) row.sr_ll_literal = r.at("sr_ll_paperalpha").get<double>();
      if (r.contains("sr_hh_paperalpha")) row.sr_hh_literal = r.at("sr_hh_paperalpha").get<double>();
      report.rows.push_back(std::move(row));
    }
    return report;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ConfigError, std::string("malformed report: ") + e.what());
  }
}

std::string to_markdown(const EvaluationReport& report) {
  std::ostringstream out;
  out << "| Type of attack | Parameters | PSNR (dB) | SR | Extracted band |\n";
  out << "|---|---|---:|---:|:---:|\n";
  for (const auto& row : report.rows) {
    const double sr = row.best_band == Band::LL ? row.sr_ll : row.sr_hh;
    out << "| " << row.attack << " | " << row.params << " | " << format_decibels(row.psnr_db, 2) << " | "
        << fixed(sr) << " | " << to_string(row.best_band) << " |\n";
  }
  out << "\nEmbedding fidelity: PSNR1 " << format_decibels(report.fidelity.psnr1, 2) << " dB (MSE1 "
      << report.fidelity.mse1 << "), PSNR2 " << format_decibels(report.fidelity.psnr2, 2) << " dB (MSE2 "
      << report.fidelity.mse2 << ")\n";
  return out.str();
}

}  // namespace wavemark
