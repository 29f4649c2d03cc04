#pragma once

#include <cstddef>
#include <filesystem>

#include "wavemark/config.hpp"
#include "wavemark/image.hpp"

namespace wavemark::fixtures {

// Deterministic procedural stand-in for a natural photograph: smooth shading,
// soft blobs, a few sharp edges and low-amplitude texture. Samples sit on the
// 8-bit grid so a PGM round trip is lossless.
GrayImage pseudo_lena(std::size_t size = 512);

// Binary (0/1) logos. The primary is a ring with a bar and centre block; the
// secondary is a framed cross.
GrayImage primary_logo(std::size_t size = 64);
GrayImage secondary_logo(std::size_t size = 32);

// Writes cover.pgm, primary.pgm, secondary.pgm and config.json (defaults,
// output under <dir>/out) into dir and returns the config.
RunConfig write_fixtures(const std::filesystem::path& dir);

}  // namespace wavemark::fixtures
