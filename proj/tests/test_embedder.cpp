#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "wavemark/embedder.hpp"
#include "wavemark/error.hpp"
#include "wavemark/metrics.hpp"

using namespace wavemark;
using namespace wavemark::testing;

namespace {

constexpr WaveletKind kKinds[] = {WaveletKind::Haar, WaveletKind::Daubechies4};

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a wavemark::Error");
  return ErrorKind::IoError;
}

}  // namespace

TEST_CASE("defaults") {
  const EmbedParams p;
  CHECK(p.wavelet == WaveletKind::Haar);
  CHECK(p.alpha_ll == 0.04);
  CHECK(p.alpha_hh == 0.01);
  CHECK(p.alpha_nest == 1.0);
  CHECK(p.offset_row == 0);
  CHECK(p.offset_col == 0);
  CHECK(warnings(p).empty());
}

TEST_CASE("validate rejects non-positive alphas and warns on inverted ordering") {
  EmbedParams p;
  p.alpha_hh = 0.0;
  CHECK(kind_of([&] { validate(p); }) == ErrorKind::InvalidParam);
  p.alpha_hh = -1.0;
  CHECK(kind_of([&] { validate(p); }) == ErrorKind::InvalidParam);
  p = EmbedParams{};
  p.alpha_nest = std::nan("");
  CHECK(kind_of([&] { validate(p); }) == ErrorKind::InvalidParam);
  p = EmbedParams{};
  p.alpha_ll = 0.001;
  CHECK(warnings(p).size() == 1);
}

TEST_CASE("nesting a ones secondary into a mid-grey Haar primary") {
  // ca of the primary is 1 per block, ch gains 1: each 2x2 block becomes
  // [[1,1],[0,0]].
  const GrayImage primary(4, 4, 0.5);
  const GrayImage secondary(2, 2, 1.0);
  const NestedWatermark n = nest_watermarks(primary, secondary, EmbedParams{});
  const double expect[4][4] = {{1, 1, 1, 1}, {0, 0, 0, 0}, {1, 1, 1, 1}, {0, 0, 0, 0}};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) CHECK(std::abs(n.image(r, c) - expect[r][c]) < 1e-15);
  }
  CHECK(n.primary_dims == PixelDims{4, 4});
  CHECK(n.secondary_dims == PixelDims{2, 2});
}

TEST_CASE("nesting touches only the horizontal detail band") {
  std::mt19937_64 rng(8);
  for (auto kind : kKinds) {
    EmbedParams p;
    p.wavelet = kind;
    p.alpha_nest = 0.7;
    const GrayImage primary = random_binary_image(16, 12, rng);
    const GrayImage secondary = random_binary_image(8, 6, rng);
    const auto before = dwt2(primary, kind);
    const auto after = dwt2(nest_watermarks(primary, secondary, p).image, kind);
    CHECK(max_abs_diff(before.ca, after.ca) < 1e-13);
    CHECK(max_abs_diff(before.cv, after.cv) < 1e-13);
    CHECK(max_abs_diff(before.cd, after.cd) < 1e-13);
    for (std::size_t i = 0; i < after.ch.size(); ++i) {
      CHECK(std::abs(after.ch.values()[i] - before.ch.values()[i] - 0.7 * secondary.samples()[i]) < 1e-13);
    }
  }
}

TEST_CASE("nesting size rules") {
  EmbedParams p;
  CHECK(kind_of([&] { nest_watermarks(GrayImage(6, 5), GrayImage(3, 2), p); }) == ErrorKind::OddDimensions);
  CHECK(kind_of([&] { nest_watermarks(GrayImage(8, 8), GrayImage(4, 2), p); }) ==
        ErrorKind::DimensionMismatch);
  CHECK(kind_of([&] { nest_watermarks(GrayImage(8, 8), GrayImage(8, 8), p); }) ==
        ErrorKind::DimensionMismatch);
}

TEST_CASE("embedding adds alpha*W to ca and cd inside the window only") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::size_t> off(0, 4);
  for (auto kind : kKinds) {
    for (int trial = 0; trial < 10; ++trial) {
      EmbedParams p;
      p.wavelet = kind;
      p.offset_row = off(rng);
      p.offset_col = off(rng);
      const GrayImage cover = random_8bit_image(24, 20, rng);
      const GrayImage w = random_image(6, 5, rng);
      const auto before = dwt2(cover, kind);
      const auto after = dwt2(embed_into_cover(cover, w, p), kind);
      CHECK(max_abs_diff(before.ch, after.ch) < 1e-13);
      CHECK(max_abs_diff(before.cv, after.cv) < 1e-13);
      for (std::size_t r = 0; r < before.ca.rows(); ++r) {
        for (std::size_t c = 0; c < before.ca.cols(); ++c) {
          const bool inside = r >= p.offset_row && r < p.offset_row + 5 && c >= p.offset_col && c < p.offset_col + 6;
          const double wv = inside ? w(r - p.offset_row, c - p.offset_col) : 0.0;
          CHECK(std::abs(after.ca(r, c) - before.ca(r, c) - p.alpha_ll * wv) < 1e-13);
          CHECK(std::abs(after.cd(r, c) - before.cd(r, c) - p.alpha_hh * wv) < 1e-13);
        }
      }
    }
  }
}

TEST_CASE("distortion equals the coefficient energy budget") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> half(4, 32);
  std::uniform_real_distribution<double> alpha(0.001, 0.2);
  for (auto kind : kKinds) {
    for (int trial = 0; trial < 25; ++trial) {
      EmbedParams p;
      p.wavelet = kind;
      p.alpha_ll = alpha(rng);
      p.alpha_hh = alpha(rng);
      const std::size_t w = 2 * half(rng), h = 2 * half(rng);
      const GrayImage cover = random_image(w, h, rng);
      const GrayImage wm = random_image(w / 2 - 1, h / 2 - 2, rng);
      const double budget = (p.alpha_ll * p.alpha_ll + p.alpha_hh * p.alpha_hh) * energy(wm.samples()) /
                            static_cast<double>(cover.area());
      const double measured = mse(embed_into_cover(cover, wm, p), cover);
      CHECK(std::abs(measured - budget) <= 1e-9 * budget);
    }
  }
}

TEST_CASE("zero alphas embed nothing") {
  std::mt19937_64 rng(9);
  EmbedParams p;
  p.alpha_ll = 0.0;
  p.alpha_hh = 0.0;
  const GrayImage cover = random_image(16, 16, rng);
  CHECK(max_abs_diff(embed_into_cover(cover, random_image(8, 8, rng), p), cover) < 1e-14);
  p.alpha_ll = -0.1;
  CHECK(kind_of([&] { embed_into_cover(cover, GrayImage(2, 2), p); }) == ErrorKind::InvalidParam);
}

TEST_CASE("window placement is checked") {
  EmbedParams p;
  const GrayImage cover(16, 16);
  CHECK_NOTHROW(embed_into_cover(cover, GrayImage(8, 8), p));
  CHECK(kind_of([&] { embed_into_cover(cover, GrayImage(9, 8), p); }) == ErrorKind::WatermarkTooLarge);
  p.offset_col = 1;
  CHECK(kind_of([&] { embed_into_cover(cover, GrayImage(8, 8), p); }) == ErrorKind::WatermarkTooLarge);
  CHECK(kind_of([&] { embed_into_cover(GrayImage(15, 16), GrayImage(2, 2), EmbedParams{}); }) ==
        ErrorKind::OddDimensions);
}

TEST_CASE("capacity doubles with nesting") {
  const GrayImage cover(512, 512);
  CHECK(capacity_bits(cover, {64, 64}, false) == 4096);
  CHECK(capacity_bits(cover, {64, 64}, true) == 8192);
  CHECK(capacity_bits(cover, {63, 65}, true) == 2 * 64 * 66);
  CHECK(capacity_bits(cover, {63, 65}, false) == 63 * 65);
  CHECK(kind_of([&] { capacity_bits(cover, {257, 2}, false); }) == ErrorKind::WatermarkTooLarge);
  CHECK(kind_of([&] { capacity_bits(GrayImage(10, 10), {5, 5}, true); }) == ErrorKind::WatermarkTooLarge);
}
