#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wavemark/attacks.hpp"
#include "wavemark/embedder.hpp"
#include "wavemark/metrics.hpp"

namespace wavemark {

enum class Band { LL, HH };
std::string_view to_string(Band band);

// argmax of the two ratios; ties go to LL.
Band best_band(double sr_ll, double sr_hh);

struct EmbedFidelity {
  double psnr1 = 0.0;  // nested watermark vs primary
  double mse1 = 0.0;
  double psnr2 = 0.0;  // watermarked cover vs cover
  double mse2 = 0.0;
};

struct ReportRow {
  std::string attack;
  std::string params;
  double psnr_db = 0.0;  // cover vs attacked watermarked image
  double sr_ll = 0.0;
  double sr_hh = 0.0;
  Band best_band = Band::LL;
  // Present when scoring with the literal 3 / 1 divisors was requested.
  std::optional<double> sr_ll_literal;
  std::optional<double> sr_hh_literal;
};

struct ReportOptions {
  SimilarityMode similarity = SimilarityMode::binary();
  std::uint64_t seed = 0;
  bool literal_divisors = false;
  bool parallel = true;
};

struct EvaluationReport {
  EmbedFidelity fidelity;
  std::vector<ReportRow> rows;
  // Configuration echo.
  EmbedParams params;
  std::vector<AttackSpec> attacks;
  ReportOptions options;
};

EmbedFidelity measure_fidelity(const GrayImage& cover, const GrayImage& primary,
                               const NestedWatermark& nested, const GrayImage& watermarked);

// nest -> embed -> for each attack: attack -> extract -> score against the
// nested watermark. Rows come back in attack order whether or not they were
// evaluated in parallel.
EvaluationReport build_report(const GrayImage& cover, const GrayImage& primary, const GrayImage& secondary,
                              const EmbedParams& params, const std::vector<AttackSpec>& attacks,
                              const ReportOptions& options);

inline constexpr std::string_view kReportSchema = "wavemark-report/1";
inline constexpr std::string_view kCsvHeader = "attack,params,psnr_db,sr_ll,sr_hh,best_band";

std::string to_csv(const EvaluationReport& report);
std::string to_json_text(const EvaluationReport& report);
EvaluationReport report_from_json_text(const std::string& text);
// Markdown table: attack, parameters, PSNR, SR of the winning band, band.
std::string to_markdown(const EvaluationReport& report);

}  // namespace wavemark
