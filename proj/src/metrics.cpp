#include "wavemark/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "wavemark/error.hpp"

namespace wavemark {

namespace {

void require_same_shape(const GrayImage& a, const GrayImage& b) {
  if (!a.same_shape(b)) {
    throw Error(ErrorKind::DimensionMismatch,
                std::to_string(a.width()) + "x" + std::to_string(a.height()) + " vs " +
                    std::to_string(b.width()) + "x" + std::to_string(b.height()));
  }
}

constexpr double kThresholdSlack = 1e-9;

}  // namespace

double mse(const GrayImage& a, const GrayImage& b) {
  require_same_shape(a, b);
  const auto x = a.samples();
  const auto y = b.samples();
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    sum += d * d;
  }
  return sum / static_cast<double>(x.size());
}

double psnr_from_mse(double mse_value) {
  if (mse_value <= 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse_value);
}

double psnr(const GrayImage& a, const GrayImage& b) { return psnr_from_mse(mse(a, b)); }

std::string format_decibels(double db, int digits) {
  if (std::isinf(db)) return db > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, db);
  return buf;
}

std::string to_string(const SimilarityMode& mode) {
  if (mode.kind == SimilarityMode::Kind::Exact8Bit) return "exact8bit";
  char buf[64];
  std::snprintf(buf, sizeof buf, "binary:%g", mode.threshold);
  return buf;
}

SimilarityMode parse_similarity_mode(const std::string& text) {
  if (text == "exact8bit") return SimilarityMode::exact8bit();
  if (text == "binary") return SimilarityMode::binary();
  if (text.rfind("binary:", 0) == 0) {
    try {
      std::size_t used = 0;
      const double t = std::stod(text.substr(7), &used);
      if (used == text.size() - 7 && t >= 0.0 && t <= 1.0) return SimilarityMode::binary(t);
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorKind::InvalidParam, "unknown similarity mode '" + text + "'");
}

double similarity_ratio(const GrayImage& extracted, const GrayImage& reference, SimilarityMode mode) {
  require_same_shape(extracted, reference);
  const auto x = extracted.samples();
  const auto y = reference.samples();
  std::size_t matching = 0;
  if (mode.kind == SimilarityMode::Kind::Exact8Bit) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      matching += quantize_sample(x[i] + kThresholdSlack) == quantize_sample(y[i] + kThresholdSlack);
    }
  } else {
    const double cut = mode.threshold - kThresholdSlack;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const bool a = std::clamp(x[i], 0.0, 1.0) >= cut;
      const bool b = std::clamp(y[i], 0.0, 1.0) >= cut;
      matching += a == b;
    }
  }
  // S / (S + D) with S + D the pixel count.
  return static_cast<double>(matching) / static_cast<double>(x.size());
}

}  // namespace wavemark
