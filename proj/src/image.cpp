#include "wavemark/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavemark/error.hpp"

namespace wavemark {

namespace {

void require_min_size(std::size_t width, std::size_t height) {
  if (width < 2 || height < 2) {
    throw Error(ErrorKind::InvalidDimensions,
                "image must be at least 2x2, got " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
}

}  // namespace

Plane::Plane(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

Plane::Plane(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows * cols) {
    throw Error(ErrorKind::InvalidDimensions,
                "plane data holds " + std::to_string(values_.size()) + " values, expected " +
                    std::to_string(rows * cols));
  }
}

GrayImage::GrayImage(std::size_t width, std::size_t height, double fill)
    : GrayImage(Plane(height, width, fill)) {}

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<double> samples)
    : GrayImage(Plane(height, width, std::move(samples))) {}

GrayImage::GrayImage(Plane pixels) : pixels_(std::move(pixels)) {
  require_min_size(pixels_.cols(), pixels_.rows());
}

GrayImage GrayImage::clamped() const {
  GrayImage out = *this;
  for (double& v : out.samples()) v = std::clamp(v, 0.0, 1.0);
  return out;
}

unsigned char quantize_sample(double v) noexcept {
  if (!(v > 0.0)) return 0;  // also maps NaN to 0
  if (v >= 1.0) return 255;
  return static_cast<unsigned char>(std::floor(v * 255.0 + 0.5));
}

}  // namespace wavemark
