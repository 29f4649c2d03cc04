#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "wavemark/image.hpp"

namespace wavemark {

enum class ImageFormat { Pgm, Png, Jpeg };

enum class ResizeMethod { Nearest, Bilinear };

// Format is detected from the file's magic bytes, not its extension. Colour
// PNG/JPEG input is reduced to BT.601 luma before normalisation.
GrayImage load_image(const std::filesystem::path& path);

// Format follows the extension: .pgm, .png, .jpg/.jpeg (JPEG at quality 90).
void save_image(const GrayImage& img, const std::filesystem::path& path);

ImageFormat format_for_extension(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_pgm(const GrayImage& img);
GrayImage decode_pgm(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_png(const GrayImage& img);
GrayImage decode_png(std::span<const std::uint8_t> bytes);

// Baseline JPEG, single component. quality in [1,100].
std::vector<std::uint8_t> encode_jpeg(const GrayImage& img, int quality);
GrayImage decode_jpeg(std::span<const std::uint8_t> bytes);

// Pixel-centre aligned resampling; bilinear clamps sample positions to the
// image edge.
GrayImage resize(const GrayImage& img, std::size_t new_width, std::size_t new_height,
                 ResizeMethod method);

}  // namespace wavemark
