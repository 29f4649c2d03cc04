#pragma once

#include <optional>
#include <string>

#include "wavemark/image.hpp"

namespace wavemark {

double mse(const GrayImage& a, const GrayImage& b);

// 10*log10(1/mse) with MAX = 1. Identical images give +infinity.
double psnr(const GrayImage& a, const GrayImage& b);
double psnr_from_mse(double mse_value);

// "inf" for infinite values, otherwise fixed-point with the given digits.
std::string format_decibels(double db, int digits = 4);

struct SimilarityMode {
  enum class Kind { Exact8Bit, Binary };
  Kind kind = Kind::Exact8Bit;
  double threshold = 0.5;  // Binary only

  static SimilarityMode exact8bit() { return {Kind::Exact8Bit, 0.5}; }
  static SimilarityMode binary(double threshold = 0.5) { return {Kind::Binary, threshold}; }

  friend bool operator==(const SimilarityMode&, const SimilarityMode&) = default;
};

std::string to_string(const SimilarityMode& mode);
// "exact8bit", "binary" or "binary:<threshold>".
SimilarityMode parse_similarity_mode(const std::string& text);

// SR = S / (S + D) over pixels after both images are clamped and quantised
// (Exact8Bit) or thresholded (Binary). Both rules forgive 1e-9 of
// floating-point noise so a sample sitting exactly on a rounding tie or on the
// threshold classifies the same way in both images.
double similarity_ratio(const GrayImage& extracted, const GrayImage& reference,
                        SimilarityMode mode = SimilarityMode::exact8bit());

}  // namespace wavemark
