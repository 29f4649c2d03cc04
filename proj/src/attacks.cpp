#include "wavemark/attacks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "wavemark/error.hpp"
#include "wavemark/imageio.hpp"
#include "wavemark/metrics.hpp"

namespace wavemark {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void clamp_in_place(GrayImage& img) {
  for (double& v : img.samples()) v = std::clamp(v, 0.0, 1.0);
}

// Correlation with a square odd-sized kernel, borders replicated.
GrayImage filter_replicate(const GrayImage& img, const Plane& kernel) {
  const auto radius = static_cast<std::ptrdiff_t>(kernel.rows() / 2);
  const auto rows = static_cast<std::ptrdiff_t>(img.height());
  const auto cols = static_cast<std::ptrdiff_t>(img.width());
  GrayImage out(img.width(), img.height());
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    for (std::ptrdiff_t c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (std::ptrdiff_t kr = -radius; kr <= radius; ++kr) {
        const auto sr = static_cast<std::size_t>(std::clamp(r + kr, std::ptrdiff_t{0}, rows - 1));
        for (std::ptrdiff_t kc = -radius; kc <= radius; ++kc) {
          const auto sc = static_cast<std::size_t>(std::clamp(c + kc, std::ptrdiff_t{0}, cols - 1));
          acc += kernel(static_cast<std::size_t>(kr + radius), static_cast<std::size_t>(kc + radius)) *
                 img(sr, sc);
        }
      }
      out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = acc;
    }
  }
  return out;
}

GrayImage run(const GrayImage& in, const attack::Identity&, std::uint64_t) { return in; }

GrayImage run(const GrayImage& in, const attack::IntensityAdjust& p, std::uint64_t) {
  GrayImage out = in;
  for (double& v : out.samples()) v = std::pow(v, p.gamma);
  return out;
}

GrayImage run(const GrayImage& in, const attack::GammaCorrection& p, std::uint64_t) {
  GrayImage out = in;
  const double slope = (p.high_out - p.low_out) / (p.high_in - p.low_in);
  for (double& v : out.samples()) {
    const double x = std::clamp(v, p.low_in, p.high_in);
    v = p.low_out + (x - p.low_in) * slope;
  }
  return out;
}

GrayImage run(const GrayImage& in, const attack::HistogramEqualization&, std::uint64_t) {
  std::array<std::size_t, 256> histogram{};
  for (double v : in.samples()) ++histogram[quantize_sample(v)];
  std::array<double, 256> mapping{};
  std::size_t running = 0;
  const auto total = static_cast<double>(in.area());
  for (std::size_t k = 0; k < 256; ++k) {
    running += histogram[k];
    mapping[k] = std::floor(255.0 * static_cast<double>(running) / total + 0.5) / 255.0;
  }
  GrayImage out = in;
  for (double& v : out.samples()) v = mapping[quantize_sample(v)];
  return out;
}

GrayImage run(const GrayImage& in, const attack::LowPass& p, std::uint64_t) {
  const auto n = static_cast<std::size_t>(p.size);
  return filter_replicate(in, Plane(n, n, 1.0 / static_cast<double>(n * n)));
}

GrayImage run(const GrayImage& in, const attack::Resize& p, std::uint64_t) {
  const auto shrink = [&](std::size_t n) {
    return std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(static_cast<double>(n) * p.scale)));
  };
  const GrayImage small = resize(in, shrink(in.width()), shrink(in.height()), ResizeMethod::Bilinear);
  return resize(small, in.width(), in.height(), ResizeMethod::Bilinear);
}

GrayImage run(const GrayImage& in, const attack::GaussianNoise& p, std::uint64_t seed) {
  NormalSampler normal(seed);
  const double sigma = std::sqrt(p.variance);
  GrayImage out = in;
  for (double& v : out.samples()) v += p.mean + sigma * normal.next();
  return out;
}

GrayImage run(const GrayImage& in, const attack::HighPass& p, std::uint64_t) {
  const double a = p.alpha;
  const double k = 1.0 / (a + 1.0);
  Plane kernel(3, 3, std::vector<double>{-a * k, (a - 1) * k, -a * k,         //
                                         (a - 1) * k, (a + 5) * k, (a - 1) * k,  //
                                         -a * k, (a - 1) * k, -a * k});
  return filter_replicate(in, kernel);
}

GrayImage run(const GrayImage& in, const attack::JpegCompress& p, std::uint64_t) {
  return decode_jpeg(encode_jpeg(in, p.quality));
}

}  // namespace

double NormalSampler::next() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  // 53-bit uniforms; u1 in (0, 1] keeps the log finite.
  const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

std::string_view attack_name(const AttackSpec& spec) {
  return std::visit(overloaded{
                        [](const attack::Identity&) { return std::string_view("identity"); },
                        [](const attack::IntensityAdjust&) { return std::string_view("intensity_adjust"); },
                        [](const attack::GammaCorrection&) { return std::string_view("gamma_correction"); },
                        [](const attack::HistogramEqualization&) {
                          return std::string_view("histogram_equalization");
                        },
                        [](const attack::LowPass&) { return std::string_view("low_pass"); },
                        [](const attack::Resize&) { return std::string_view("resize"); },
                        [](const attack::GaussianNoise&) { return std::string_view("gaussian_noise"); },
                        [](const attack::HighPass&) { return std::string_view("high_pass"); },
                        [](const attack::JpegCompress&) { return std::string_view("jpeg"); },
                    },
                    spec.params);
}

std::vector<std::string_view> attack_names() {
  return {"identity", "intensity_adjust", "gamma_correction", "histogram_equalization", "low_pass",
          "resize",   "gaussian_noise",   "high_pass",        "jpeg"};
}

AttackSpec make_attack(std::string_view name) {
  if (name == "identity") return {attack::Identity{}, std::nullopt};
  if (name == "intensity_adjust") return {attack::IntensityAdjust{}, std::nullopt};
  if (name == "gamma_correction") return {attack::GammaCorrection{}, std::nullopt};
  if (name == "histogram_equalization") return {attack::HistogramEqualization{}, std::nullopt};
  if (name == "low_pass") return {attack::LowPass{}, std::nullopt};
  if (name == "resize") return {attack::Resize{}, std::nullopt};
  if (name == "gaussian_noise") return {attack::GaussianNoise{}, std::nullopt};
  if (name == "high_pass") return {attack::HighPass{}, std::nullopt};
  if (name == "jpeg") return {attack::JpegCompress{}, std::nullopt};
  throw Error(ErrorKind::InvalidParam, "unknown attack '" + std::string(name) + "'");
}

std::vector<AttackSpec> default_attack_matrix() {
  std::vector<AttackSpec> out;
  for (auto name : {"intensity_adjust", "gamma_correction", "histogram_equalization", "low_pass", "resize",
                    "gaussian_noise", "high_pass", "jpeg"}) {
    out.push_back(make_attack(name));
  }
  return out;
}

void validate(const AttackSpec& spec) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::InvalidParam, std::string(attack_name(spec)) + ": " + what);
  };
  std::visit(overloaded{
                 [](const attack::Identity&) {},
                 [&](const attack::IntensityAdjust& p) {
                   if (!(p.gamma > 0.0)) fail("gamma must be > 0");
                 },
                 [&](const attack::GammaCorrection& p) {
                   if (!(p.high_in > p.low_in)) fail("high_in must exceed low_in");
                 },
                 [](const attack::HistogramEqualization&) {},
                 [&](const attack::LowPass& p) {
                   if (p.size < 1 || p.size % 2 == 0) fail("size must be a positive odd number");
                 },
                 [&](const attack::Resize& p) {
                   if (!(p.scale > 0.0)) fail("scale must be > 0");
                 },
                 [&](const attack::GaussianNoise& p) {
                   if (!(p.variance >= 0.0)) fail("variance must be >= 0");
                 },
                 [&](const attack::HighPass& p) {
                   if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) fail("alpha must lie in [0,1]");
                 },
                 [&](const attack::JpegCompress& p) {
                   if (p.quality < 1 || p.quality > 100) fail("quality must lie in [1,100]");
                 },
             },
             spec.params);
}

std::uint64_t effective_seed(const AttackSpec& spec, std::uint64_t run_seed) {
  return spec.seed.value_or(run_seed);
}

std::string describe_params(const AttackSpec& spec, std::uint64_t run_seed) {
  return std::visit(
      overloaded{
          [](const attack::Identity&) { return std::string("-"); },
          [](const attack::IntensityAdjust& p) { return "gamma=" + num(p.gamma); },
          [](const attack::GammaCorrection& p) {
            return "in=[" + num(p.low_in) + ";" + num(p.high_in) + "] out=[" + num(p.low_out) + ";" +
                   num(p.high_out) + "]";
          },
          [](const attack::HistogramEqualization&) { return std::string("bins=256"); },
          [](const attack::LowPass& p) { return "size=" + std::to_string(p.size) + "x" + std::to_string(p.size); },
          [](const attack::Resize& p) { return "scale=" + num(p.scale); },
          [&](const attack::GaussianNoise& p) {
            return "mean=" + num(p.mean) + " variance=" + num(p.variance) +
                   " seed=" + std::to_string(effective_seed(spec, run_seed));
          },
          [](const attack::HighPass& p) { return "alpha=" + num(p.alpha); },
          [](const attack::JpegCompress& p) { return "quality=" + std::to_string(p.quality); },
      },
      spec.params);
}

GrayImage apply_attack(const GrayImage& img, const AttackSpec& spec, std::uint64_t run_seed) {
  validate(spec);
  const GrayImage input = img.clamped();
  const std::uint64_t seed = effective_seed(spec, run_seed);
  GrayImage out = std::visit([&](const auto& p) { return run(input, p, seed); }, spec.params);
  clamp_in_place(out);
  return out;
}

double attack_psnr(const GrayImage& original, const GrayImage& attacked) { return psnr(original, attacked); }

}  // namespace wavemark
