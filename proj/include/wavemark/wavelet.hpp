#pragma once

#include <span>
#include <string_view>

#include "wavemark/image.hpp"

namespace wavemark {

enum class WaveletKind {
  Haar,         // db1, 2 taps
  Daubechies4,  // db2, 4 taps
};

std::string_view to_string(WaveletKind kind);
// Accepts "haar"/"db1" and "db2"/"daubechies4". Throws InvalidParam otherwise.
WaveletKind parse_wavelet(std::string_view name);

// Orthonormal analysis low-pass taps; sum of squares is 1.
std::span<const double> lowpass_taps(WaveletKind kind);
// Quadrature mirror high-pass: g[n] = (-1)^n h[L-1-n].
std::span<const double> highpass_taps(WaveletKind kind);

// Level-1 subbands. ch holds horizontal detail (low-pass along rows, high-pass
// down columns), cv vertical detail, cd diagonal detail.
struct SubbandSet {
  Plane ca;
  Plane ch;
  Plane cv;
  Plane cd;
};

// Periodised single-level 2D DWT. Requires even width and height
// (OddDimensions otherwise). For a 2x2 block [[a,b],[c,d]] under Haar:
//   ca = (a+b+c+d)/2   ch = (a+b-c-d)/2   cv = (a-b+c-d)/2   cd = (a-b-c+d)/2
SubbandSet dwt2(const GrayImage& img, WaveletKind kind);

// Exact inverse of dwt2. Output is not clamped.
GrayImage idwt2(const SubbandSet& bands, WaveletKind kind);

}  // namespace wavemark
