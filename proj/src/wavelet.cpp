#include "wavemark/wavelet.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "wavemark/error.hpp"

namespace wavemark {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

const std::array<double, 2> kHaarLow = {kInvSqrt2, kInvSqrt2};
const std::array<double, 2> kHaarHigh = {kInvSqrt2, -kInvSqrt2};

const double kSqrt3 = std::sqrt(3.0);
const double kDb2Norm = 4.0 * std::sqrt(2.0);
const std::array<double, 4> kDb2Low = {
    (1.0 + kSqrt3) / kDb2Norm,
    (3.0 + kSqrt3) / kDb2Norm,
    (3.0 - kSqrt3) / kDb2Norm,
    (1.0 - kSqrt3) / kDb2Norm,
};
const std::array<double, 4> kDb2High = {kDb2Low[3], -kDb2Low[2], kDb2Low[1], -kDb2Low[0]};

// Analysis of one strided line of even length n into n/2 low and n/2 high
// coefficients with periodic wrap.
void analyze_line(std::span<const double> in, std::span<double> low, std::span<double> high,
                  std::span<const double> h, std::span<const double> g) {
  const std::size_t n = in.size();
  const std::size_t half = n / 2;
  for (std::size_t k = 0; k < half; ++k) {
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t t = 0; t < h.size(); ++t) {
      const double x = in[(2 * k + t) % n];
      lo += h[t] * x;
      hi += g[t] * x;
    }
    low[k] = lo;
    high[k] = hi;
  }
}

// Transpose of analyze_line; out must be zeroed by the caller.
void synthesize_line(std::span<const double> low, std::span<const double> high, std::span<double> out,
                     std::span<const double> h, std::span<const double> g) {
  const std::size_t n = out.size();
  for (std::size_t k = 0; k < low.size(); ++k) {
    for (std::size_t t = 0; t < h.size(); ++t) {
      out[(2 * k + t) % n] += h[t] * low[k] + g[t] * high[k];
    }
  }
}

void require_even(std::size_t width, std::size_t height) {
  if (width % 2 != 0 || height % 2 != 0) {
    throw Error(ErrorKind::OddDimensions,
                "DWT input is " + std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

std::string_view to_string(WaveletKind kind) {
  return kind == WaveletKind::Haar ? "haar" : "db2";
}

WaveletKind parse_wavelet(std::string_view name) {
  if (name == "haar" || name == "db1") return WaveletKind::Haar;
  if (name == "db2" || name == "daubechies4") return WaveletKind::Daubechies4;
  throw Error(ErrorKind::InvalidParam, "unknown wavelet '" + std::string(name) + "'");
}

std::span<const double> lowpass_taps(WaveletKind kind) {
  if (kind == WaveletKind::Haar) return kHaarLow;
  return kDb2Low;
}

std::span<const double> highpass_taps(WaveletKind kind) {
  if (kind == WaveletKind::Haar) return kHaarHigh;
  return kDb2High;
}

SubbandSet dwt2(const GrayImage& img, WaveletKind kind) {
  require_even(img.width(), img.height());
  const auto h = lowpass_taps(kind);
  const auto g = highpass_taps(kind);
  const std::size_t rows = img.height();
  const std::size_t cols = img.width();
  const std::size_t hr = rows / 2;
  const std::size_t hc = cols / 2;

  // Rows first: each row splits into low | high halves.
  Plane row_low(rows, hc);
  Plane row_high(rows, hc);
  for (std::size_t r = 0; r < rows; ++r) {
    analyze_line(img.samples().subspan(r * cols, cols), row_low.values().subspan(r * hc, hc),
                 row_high.values().subspan(r * hc, hc), h, g);
  }

  SubbandSet out{Plane(hr, hc), Plane(hr, hc), Plane(hr, hc), Plane(hr, hc)};
  std::vector<double> column(rows);
  std::vector<double> lo(hr);
  std::vector<double> hi(hr);
  auto columns = [&](const Plane& src, Plane& low_dst, Plane& high_dst) {
    for (std::size_t c = 0; c < hc; ++c) {
      for (std::size_t r = 0; r < rows; ++r) column[r] = src(r, c);
      analyze_line(column, lo, hi, h, g);
      for (std::size_t r = 0; r < hr; ++r) {
        low_dst(r, c) = lo[r];
        high_dst(r, c) = hi[r];
      }
    }
  };
  columns(row_low, out.ca, out.ch);
  columns(row_high, out.cv, out.cd);
  return out;
}

GrayImage idwt2(const SubbandSet& bands, WaveletKind kind) {
  if (!bands.ca.same_shape(bands.ch) || !bands.ca.same_shape(bands.cv) ||
      !bands.ca.same_shape(bands.cd) || bands.ca.empty()) {
    throw Error(ErrorKind::MismatchedPlanes, "subband planes differ in size or are empty");
  }
  const auto h = lowpass_taps(kind);
  const auto g = highpass_taps(kind);
  const std::size_t hr = bands.ca.rows();
  const std::size_t hc = bands.ca.cols();
  const std::size_t rows = 2 * hr;
  const std::size_t cols = 2 * hc;

  Plane row_low(rows, hc);
  Plane row_high(rows, hc);
  std::vector<double> lo(hr);
  std::vector<double> hi(hr);
  std::vector<double> column(rows);
  auto columns = [&](const Plane& low_src, const Plane& high_src, Plane& dst) {
    for (std::size_t c = 0; c < hc; ++c) {
      for (std::size_t r = 0; r < hr; ++r) {
        lo[r] = low_src(r, c);
        hi[r] = high_src(r, c);
      }
      std::fill(column.begin(), column.end(), 0.0);
      synthesize_line(lo, hi, column, h, g);
      for (std::size_t r = 0; r < rows; ++r) dst(r, c) = column[r];
    }
  };
  columns(bands.ca, bands.ch, row_low);
  columns(bands.cv, bands.cd, row_high);

  GrayImage out(cols, rows);
  for (std::size_t r = 0; r < rows; ++r) {
    synthesize_line(row_low.values().subspan(r * hc, hc), row_high.values().subspan(r * hc, hc),
                    out.samples().subspan(r * cols, cols), h, g);
  }
  return out;
}

}  // namespace wavemark
