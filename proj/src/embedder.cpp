#include "wavemark/embedder.hpp"

#include <string>

#include "wavemark/error.hpp"

namespace wavemark {

namespace {

std::string dims(std::size_t w, std::size_t h) {
  return std::to_string(w) + "x" + std::to_string(h);
}

void require_nonnegative(double alpha, const char* name) {
  if (!(alpha >= 0.0)) {
    throw Error(ErrorKind::InvalidParam, std::string(name) + " must be >= 0");
  }
}

}  // namespace

void validate(const EmbedParams& params) {
  const std::pair<double, const char*> alphas[] = {
      {params.alpha_ll, "alpha_ll"}, {params.alpha_hh, "alpha_hh"}, {params.alpha_nest, "alpha_nest"}};
  for (const auto& [value, name] : alphas) {
    if (!(value > 0.0)) {
      throw Error(ErrorKind::InvalidParam, std::string(name) + " must be > 0, got " + std::to_string(value));
    }
  }
}

std::vector<std::string> warnings(const EmbedParams& params) {
  std::vector<std::string> out;
  if (params.alpha_ll < params.alpha_hh) {
    out.push_back("alpha_ll (" + std::to_string(params.alpha_ll) + ") is smaller than alpha_hh (" +
                  std::to_string(params.alpha_hh) + "); the approximation band usually takes the larger factor");
  }
  return out;
}

NestedWatermark nest_watermarks(const GrayImage& primary, const GrayImage& secondary,
                                const EmbedParams& params) {
  require_nonnegative(params.alpha_nest, "alpha_nest");
  if (primary.width() % 2 != 0 || primary.height() % 2 != 0) {
    throw Error(ErrorKind::OddDimensions, "primary watermark is " + dims(primary.width(), primary.height()));
  }
  if (secondary.width() * 2 != primary.width() || secondary.height() * 2 != primary.height()) {
    throw Error(ErrorKind::DimensionMismatch,
                "secondary watermark is " + dims(secondary.width(), secondary.height()) +
                    ", expected half the primary (" + dims(primary.width() / 2, primary.height() / 2) + ")");
  }
  SubbandSet bands = dwt2(primary, params.wavelet);
  auto ch = bands.ch.values();
  auto s = secondary.samples();
  for (std::size_t i = 0; i < ch.size(); ++i) ch[i] += params.alpha_nest * s[i];
  return NestedWatermark{idwt2(bands, params.wavelet), {primary.width(), primary.height()},
                         {secondary.width(), secondary.height()}};
}

void require_window_fits(const GrayImage& cover, PixelDims watermark, const EmbedParams& params) {
  const std::size_t band_rows = cover.height() / 2;
  const std::size_t band_cols = cover.width() / 2;
  if (params.offset_row + watermark.height > band_rows || params.offset_col + watermark.width > band_cols) {
    throw Error(ErrorKind::WatermarkTooLarge,
                "watermark " + dims(watermark.width, watermark.height) + " at offset (" +
                    std::to_string(params.offset_row) + "," + std::to_string(params.offset_col) +
                    ") exceeds the " + dims(band_cols, band_rows) + " subband");
  }
}

GrayImage embed_into_cover(const GrayImage& cover, const GrayImage& watermark,
                           const EmbedParams& params) {
  require_nonnegative(params.alpha_ll, "alpha_ll");
  require_nonnegative(params.alpha_hh, "alpha_hh");
  if (cover.width() % 2 != 0 || cover.height() % 2 != 0) {
    throw Error(ErrorKind::OddDimensions, "cover is " + dims(cover.width(), cover.height()));
  }
  require_window_fits(cover, {watermark.width(), watermark.height()}, params);

  SubbandSet bands = dwt2(cover, params.wavelet);
  for (std::size_t r = 0; r < watermark.height(); ++r) {
    for (std::size_t c = 0; c < watermark.width(); ++c) {
      const double w = watermark(r, c);
      bands.ca(params.offset_row + r, params.offset_col + c) += params.alpha_ll * w;
      bands.cd(params.offset_row + r, params.offset_col + c) += params.alpha_hh * w;
    }
  }
  return idwt2(bands, params.wavelet);
}

GrayImage embed_into_cover(const GrayImage& cover, const NestedWatermark& nested,
                           const EmbedParams& params) {
  return embed_into_cover(cover, nested.image, params);
}

std::size_t capacity_bits(const GrayImage& cover, PixelDims watermark, bool nested) {
  if (nested) {
    watermark.width += watermark.width % 2;
    watermark.height += watermark.height % 2;
  }
  if (watermark.width > cover.width() / 2 || watermark.height > cover.height() / 2) {
    throw Error(ErrorKind::WatermarkTooLarge,
                "watermark " + dims(watermark.width, watermark.height) + " exceeds the " +
                    dims(cover.width() / 2, cover.height() / 2) + " subband");
  }
  return nested ? 2 * watermark.area() : watermark.area();
}

}  // namespace wavemark
