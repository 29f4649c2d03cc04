#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wavemark/image.hpp"

namespace wavemark {

namespace attack {

// out = in^gamma
struct IntensityAdjust {
  double gamma = 1.5;
  friend bool operator==(const IntensityAdjust&, const IntensityAdjust&) = default;
};

// Linear map of [low_in, high_in] onto [low_out, high_out], clipped.
struct GammaCorrection {
  double low_in = 0.0;
  double high_in = 0.8;
  double low_out = 0.0;
  double high_out = 1.0;
  friend bool operator==(const GammaCorrection&, const GammaCorrection&) = default;
};

// 256-bin CDF mapping: level k -> round(255 * cdf(k)) / 255.
struct HistogramEqualization {
  friend bool operator==(const HistogramEqualization&, const HistogramEqualization&) = default;
};

// size x size mean filter.
struct LowPass {
  int size = 3;
  friend bool operator==(const LowPass&, const LowPass&) = default;
};

// Bilinear down by `scale` per axis, then bilinear back to the input size.
struct Resize {
  double scale = 0.5;
  friend bool operator==(const Resize&, const Resize&) = default;
};

struct GaussianNoise {
  double mean = 0.0;
  double variance = 0.001;
  friend bool operator==(const GaussianNoise&, const GaussianNoise&) = default;
};

// 3x3 unsharp kernel 1/(a+1) * [[-a, a-1, -a], [a-1, a+5, a-1], [-a, a-1, -a]].
struct HighPass {
  double alpha = 0.6;
  friend bool operator==(const HighPass&, const HighPass&) = default;
};

// Baseline JPEG encode/decode round trip.
struct JpegCompress {
  int quality = 75;
  friend bool operator==(const JpegCompress&, const JpegCompress&) = default;
};

// Clamp only. Handy as a control row.
struct Identity {
  friend bool operator==(const Identity&, const Identity&) = default;
};

}  // namespace attack

using AttackParams =
    std::variant<attack::Identity, attack::IntensityAdjust, attack::GammaCorrection,
                 attack::HistogramEqualization, attack::LowPass, attack::Resize,
                 attack::GaussianNoise, attack::HighPass, attack::JpegCompress>;

struct AttackSpec {
  AttackParams params;
  // Only GaussianNoise draws random numbers. Unset means "use the run seed".
  std::optional<std::uint64_t> seed;

  friend bool operator==(const AttackSpec&, const AttackSpec&) = default;
};

// Stable identifiers: identity, intensity_adjust, gamma_correction,
// histogram_equalization, low_pass, resize, gaussian_noise, high_pass, jpeg.
std::string_view attack_name(const AttackSpec& spec);
std::vector<std::string_view> attack_names();
// Default-parameter spec for a name; InvalidParam for unknown names.
AttackSpec make_attack(std::string_view name);

// The eight benchmark attacks, in report order. Identity is not included.
std::vector<AttackSpec> default_attack_matrix();

// Throws InvalidParam for out-of-domain parameters.
void validate(const AttackSpec& spec);

// Human-readable parameter summary without commas, e.g. "mean=0 variance=0.001 seed=7".
std::string describe_params(const AttackSpec& spec, std::uint64_t run_seed);

std::uint64_t effective_seed(const AttackSpec& spec, std::uint64_t run_seed);

// Input is clamped to [0,1] first; output is always in [0,1].
GrayImage apply_attack(const GrayImage& img, const AttackSpec& spec, std::uint64_t run_seed = 0);

// PSNR of original vs attacked; +infinity for identical images.
double attack_psnr(const GrayImage& original, const GrayImage& attacked);

// Standard normals from std::mt19937_64 through the trigonometric Box-Muller
// transform, both outputs of each pair used. std::normal_distribution is not
// used because its algorithm differs between standard libraries.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace wavemark
