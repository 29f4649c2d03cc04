#include "wavemark/extractor.hpp"

#include <string>

#include "wavemark/error.hpp"
#include "wavemark/wavelet.hpp"

namespace wavemark {

namespace {

void require_same_shape(const GrayImage& a, const GrayImage& b, const char* what) {
  if (!a.same_shape(b)) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                    " vs " + std::to_string(b.width()) + "x" + std::to_string(b.height()));
  }
}

GrayImage window_difference(const Plane& suspect, const Plane& original, const EmbedParams& params,
                            PixelDims watermark, double divisor) {
  GrayImage out(watermark.width, watermark.height);
  for (std::size_t r = 0; r < watermark.height; ++r) {
    for (std::size_t c = 0; c < watermark.width; ++c) {
      const std::size_t br = params.offset_row + r;
      const std::size_t bc = params.offset_col + c;
      out(r, c) = (suspect(br, bc) - original(br, bc)) / divisor;
    }
  }
  return out;
}

}  // namespace

ExtractionDivisors embedding_divisors(const EmbedParams& params) {
  return {params.alpha_ll, params.alpha_hh};
}

ExtractionDivisors literal_attack_divisors() { return {3.0, 1.0}; }

GrayImage render_8bit(const GrayImage& estimate) {
  GrayImage out = estimate;
  for (double& v : out.samples()) v = quantize_sample(v) / 255.0;
  return out;
}

ExtractionResult extract_watermark(const GrayImage& suspect, const GrayImage& original_cover,
                                   const EmbedParams& params, PixelDims watermark) {
  validate(params);
  return extract_watermark(suspect, original_cover, params, watermark, embedding_divisors(params));
}

ExtractionResult extract_watermark(const GrayImage& suspect, const GrayImage& original_cover,
                                   const EmbedParams& params, PixelDims watermark,
                                   ExtractionDivisors divisors) {
  require_same_shape(suspect, original_cover, "suspect vs cover");
  if (!(divisors.ll != 0.0) || !(divisors.hh != 0.0)) {
    throw Error(ErrorKind::InvalidParam, "extraction divisors must be non-zero");
  }
  require_window_fits(original_cover, watermark, params);
  const SubbandSet s = dwt2(suspect, params.wavelet);
  const SubbandSet o = dwt2(original_cover, params.wavelet);
  GrayImage ll = window_difference(s.ca, o.ca, params, watermark, divisors.ll);
  GrayImage hh = window_difference(s.cd, o.cd, params, watermark, divisors.hh);
  GrayImage ll_view = render_8bit(ll);
  GrayImage hh_view = render_8bit(hh);
  return ExtractionResult{std::move(ll), std::move(hh), std::move(ll_view), std::move(hh_view),
                          std::nullopt, std::nullopt};
}

// similarity_ratio quantises or thresholds itself, so it is handed the raw
// estimates; in exact8bit mode this equals scoring the 8-bit renderings.
void score(ExtractionResult& result, const GrayImage& reference, SimilarityMode mode) {
  result.sr_ll = similarity_ratio(result.ll_estimate, reference, mode);
  result.sr_hh = similarity_ratio(result.hh_estimate, reference, mode);
}

GrayImage denest_secondary(const GrayImage& primary_estimate, const GrayImage& original_primary,
                           const EmbedParams& params) {
  require_same_shape(primary_estimate, original_primary, "primary estimate vs original primary");
  if (!(params.alpha_nest > 0.0)) throw Error(ErrorKind::InvalidParam, "alpha_nest must be > 0");
  const Plane est = dwt2(primary_estimate, params.wavelet).ch;
  const Plane orig = dwt2(original_primary, params.wavelet).ch;
  GrayImage out(est.cols(), est.rows());
  auto o = out.samples();
  for (std::size_t i = 0; i < o.size(); ++i) {
    o[i] = (est.values()[i] - orig.values()[i]) / params.alpha_nest;
  }
  return out;
}

}  // namespace wavemark
