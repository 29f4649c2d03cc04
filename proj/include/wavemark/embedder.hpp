#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wavemark/image.hpp"
#include "wavemark/wavelet.hpp"

namespace wavemark {

struct EmbedParams {
  WaveletKind wavelet = WaveletKind::Haar;
  // The approximation band carries larger coefficients, so it tolerates a
  // larger scaling factor than the diagonal band.
  double alpha_ll = 0.04;
  double alpha_hh = 0.01;
  // Strength of the secondary watermark inside the primary's horizontal band.
  double alpha_nest = 1.0;
  // Top-left corner of the embedding window inside each cover subband.
  std::size_t offset_row = 0;
  std::size_t offset_col = 0;

  friend bool operator==(const EmbedParams&, const EmbedParams&) = default;
};

// Throws InvalidParam unless every alpha is strictly positive.
void validate(const EmbedParams& params);
// Non-fatal findings, e.g. alpha_ll < alpha_hh.
std::vector<std::string> warnings(const EmbedParams& params);

struct PixelDims {
  std::size_t width = 0;
  std::size_t height = 0;

  std::size_t area() const noexcept { return width * height; }
  friend bool operator==(const PixelDims&, const PixelDims&) = default;
};

struct NestedWatermark {
  GrayImage image;
  PixelDims primary_dims;
  PixelDims secondary_dims;
};

// Adds alpha_nest * secondary to the horizontal detail band of the primary and
// resynthesises. The secondary must be exactly half the primary in each axis.
NestedWatermark nest_watermarks(const GrayImage& primary, const GrayImage& secondary,
                                const EmbedParams& params);

// Adds alpha_ll * W to the approximation band and alpha_hh * W to the diagonal
// band over the window at (offset_row, offset_col), then resynthesises. The
// result is not clamped. Alphas of zero are accepted and embed nothing.
GrayImage embed_into_cover(const GrayImage& cover, const GrayImage& watermark,
                           const EmbedParams& params);
GrayImage embed_into_cover(const GrayImage& cover, const NestedWatermark& nested,
                           const EmbedParams& params);

// Payload in bits: the watermark area, doubled when nesting carries a second
// watermark. Odd nested dimensions are rounded up to even first.
std::size_t capacity_bits(const GrayImage& cover, PixelDims watermark, bool nested);

// Throws WatermarkTooLarge unless the window fits inside a subband of the
// given cover.
void require_window_fits(const GrayImage& cover, PixelDims watermark, const EmbedParams& params);

}  // namespace wavemark
