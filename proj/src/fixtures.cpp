#include "wavemark/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "wavemark/error.hpp"
#include "wavemark/imageio.hpp"

namespace wavemark::fixtures {

namespace {

double smoothstep(double e0, double e1, double x) {
  const double t = std::clamp((x - e0) / (e1 - e0), 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

// Integer lattice hash in [0,1).
double lattice(std::int64_t x, std::int64_t y) {
  auto h = static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(y) * 0xC2B2AE3D27D4EB4Full;
  h ^= h >> 31;
  h *= 0xBF58476D1CE4E5B9ull;
  h ^= h >> 29;
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double value_noise(double x, double y) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const auto ix = static_cast<std::int64_t>(fx);
  const auto iy = static_cast<std::int64_t>(fy);
  const double tx = smoothstep(0.0, 1.0, x - fx);
  const double ty = smoothstep(0.0, 1.0, y - fy);
  const double a = lattice(ix, iy) + (lattice(ix + 1, iy) - lattice(ix, iy)) * tx;
  const double b = lattice(ix, iy + 1) + (lattice(ix + 1, iy + 1) - lattice(ix, iy + 1)) * tx;
  return a + (b - a) * ty;
}

double snap_8bit(double v) { return quantize_sample(v) / 255.0; }

}  // namespace

GrayImage pseudo_lena(std::size_t size) {
  constexpr double tau = 2.0 * std::numbers::pi;
  GrayImage img(size, size);
  const auto n = static_cast<double>(size);
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) {
      const double u = (static_cast<double>(c) + 0.5) / n;
      const double w = (static_cast<double>(r) + 0.5) / n;
      // Broad shading.
      double v = 0.50 + 0.12 * std::sin(tau * (0.6 * u + 0.25 * w)) * std::cos(tau * 0.45 * w);
      // Face-like bright blob and a darker shoulder blob.
      v += 0.18 * std::exp(-((u - 0.58) * (u - 0.58) + (w - 0.42) * (w - 0.42)) / 0.018);
      v -= 0.14 * std::exp(-((u - 0.25) * (u - 0.25) + (w - 0.8) * (w - 0.8)) / 0.03);
      // Hat brim: a curved edge about two pixels wide.
      const double brim = w - (0.22 + 0.08 * std::sin(tau * 1.3 * u));
      v += 0.10 / (1.0 + std::exp(-brim * n / 1.5)) - 0.05;
      // Hard-edged frame on the right.
      if (u > 0.86 && u < 0.9) v -= 0.12;
      // Multi-octave texture, kept faint.
      v += 0.05 * (value_noise(u * 12.0, w * 12.0) - 0.5);
      v += 0.025 * (value_noise(u * 48.0, w * 48.0) - 0.5);
      v += 0.012 * std::sin(tau * 37.0 * u) * std::sin(tau * 29.0 * w);
      img(r, c) = snap_8bit(std::clamp(v, 0.06, 0.94));
    }
  }
  return img;
}

GrayImage primary_logo(std::size_t size) {
  GrayImage img(size, size);
  const double centre = static_cast<double>(size) / 2.0 - 0.5;
  const double s = static_cast<double>(size) / 64.0;
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) {
      const double dy = static_cast<double>(r) - centre;
      const double dx = static_cast<double>(c) - centre;
      const double radius = std::hypot(dx, dy);
      const bool ring = radius >= 20.0 * s && radius <= 28.0 * s;
      const bool block = std::abs(dx) <= 6.0 * s && std::abs(dy) <= 6.0 * s;
      const bool bar = std::abs(dy - 0.6 * dx) <= 2.5 * s && radius < 20.0 * s;
      img(r, c) = (ring || block || bar) ? 1.0 : 0.0;
    }
  }
  return img;
}

GrayImage secondary_logo(std::size_t size) {
  GrayImage img(size, size);
  const auto n = static_cast<std::ptrdiff_t>(size);
  const std::ptrdiff_t t = std::max<std::ptrdiff_t>(1, n / 16);
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    for (std::ptrdiff_t c = 0; c < n; ++c) {
      const bool frame = r < t || c < t || r >= n - t || c >= n - t;
      const bool diagonal = std::abs(r - c) <= t || std::abs(r + c - (n - 1)) <= t;
      img(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = (frame || diagonal) ? 1.0 : 0.0;
    }
  }
  return img;
}

RunConfig write_fixtures(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + dir.string() + ": " + ec.message());
  save_image(pseudo_lena(), dir / "cover.pgm");
  save_image(primary_logo(), dir / "primary.pgm");
  save_image(secondary_logo(), dir / "secondary.pgm");

  RunConfig config;
  config.cover = "cover.pgm";
  config.primary = "primary.pgm";
  config.secondary = "secondary.pgm";
  config.output_dir = "out";
  config.base_dir = dir;
  save_config(config, dir / "config.json");
  return config;
}

}  // namespace wavemark::fixtures
