#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wavemark {

// Row-major matrix of doubles. Used for wavelet coefficient planes, which may
// be as small as 1x1.
class Plane {
 public:
  Plane() = default;
  Plane(std::size_t rows, std::size_t cols, double fill = 0.0);
  Plane(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  bool same_shape(const Plane& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

// Grayscale image with luminance normalised to [0,1] (MAX = 1). Samples are
// not clamped on construction; arithmetic in the transform domain may push
// them out of range until clamped() or quantisation on save.
class GrayImage {
 public:
  GrayImage(std::size_t width, std::size_t height, double fill = 0.0);
  GrayImage(std::size_t width, std::size_t height, std::vector<double> samples);
  // Throws InvalidDimensions unless the plane is at least 2x2.
  explicit GrayImage(Plane pixels);

  std::size_t width() const noexcept { return pixels_.cols(); }
  std::size_t height() const noexcept { return pixels_.rows(); }
  std::size_t area() const noexcept { return pixels_.size(); }

  double& operator()(std::size_t row, std::size_t col) { return pixels_(row, col); }
  double operator()(std::size_t row, std::size_t col) const { return pixels_(row, col); }

  std::span<double> samples() noexcept { return pixels_.values(); }
  std::span<const double> samples() const noexcept { return pixels_.values(); }

  const Plane& plane() const noexcept { return pixels_; }

  bool same_shape(const GrayImage& other) const noexcept {
    return pixels_.same_shape(other.pixels_);
  }

  GrayImage clamped() const;

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  Plane pixels_;
};

// round(clamp(v, 0, 1) * 255) with ties rounded up.
unsigned char quantize_sample(double v) noexcept;

}  // namespace wavemark
