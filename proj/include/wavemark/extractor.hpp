#pragma once

#include <optional>

#include "wavemark/embedder.hpp"
#include "wavemark/image.hpp"
#include "wavemark/metrics.hpp"

namespace wavemark {

// Divisors applied to the coefficient differences. Normally these equal the
// embedding alphas.
struct ExtractionDivisors {
  double ll = 0.04;
  double hh = 0.01;
};

ExtractionDivisors embedding_divisors(const EmbedParams& params);

// Fixed divisors 3 (LL) and 1 (HH), selected by --paper-literal-alphas. They
// do not invert an embedding done with 0.04 / 0.01 and exist only for
// comparison.
ExtractionDivisors literal_attack_divisors();

struct ExtractionResult {
  // Raw, unclamped estimates over the embedding window.
  GrayImage ll_estimate;
  GrayImage hh_estimate;
  // Clamped to [0,1] and snapped to the 8-bit grid, for display.
  GrayImage ll_rendering;
  GrayImage hh_rendering;
  std::optional<double> sr_ll;
  std::optional<double> sr_hh;
};

// Non-blind extraction: (ca(suspect) - ca(cover)) / divisor.ll and
// (cd(suspect) - cd(cover)) / divisor.hh over the watermark window.
ExtractionResult extract_watermark(const GrayImage& suspect, const GrayImage& original_cover,
                                   const EmbedParams& params, PixelDims watermark);
ExtractionResult extract_watermark(const GrayImage& suspect, const GrayImage& original_cover,
                                   const EmbedParams& params, PixelDims watermark,
                                   ExtractionDivisors divisors);

// Fills sr_ll / sr_hh against the reference watermark.
void score(ExtractionResult& result, const GrayImage& reference, SimilarityMode mode);

// Recovers the secondary watermark from an estimate of the nested watermark:
// (ch(estimate) - ch(original_primary)) / alpha_nest.
GrayImage denest_secondary(const GrayImage& primary_estimate, const GrayImage& original_primary,
                           const EmbedParams& params);

// 8-bit view of an estimate.
GrayImage render_8bit(const GrayImage& estimate);

}  // namespace wavemark
