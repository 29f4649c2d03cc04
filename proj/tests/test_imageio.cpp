#include <png.h>

#include <fstream>
#include <random>
#include <string>

#include "doctest.h"
#include "test_support.hpp"
#include "wavemark/error.hpp"
#include "wavemark/imageio.hpp"
#include "wavemark/metrics.hpp"

using namespace wavemark;
using namespace wavemark::testing;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

void write_bytes(const std::filesystem::path& p, const std::vector<std::uint8_t>& b) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a wavemark::Error");
  return ErrorKind::IoError;
}

}  // namespace

TEST_CASE("decode 2x2 PGM scales bytes by 1/255") {
  auto bytes = bytes_of("P5\n2 2\n255\n");
  bytes.insert(bytes.end(), {0, 255, 128, 64});
  const GrayImage img = decode_pgm(bytes);
  REQUIRE(img.width() == 2);
  REQUIRE(img.height() == 2);
  CHECK(img(0, 0) == 0.0);
  CHECK(img(0, 1) == 1.0);
  CHECK(img(1, 0) == 128.0 / 255.0);
  CHECK(img(1, 1) == 64.0 / 255.0);
}

TEST_CASE("PGM header comments are skipped") {
  auto bytes = bytes_of("P5\n# made by hand\n2 2 # trailing\n255\n");
  bytes.insert(bytes.end(), {1, 2, 3, 4});
  CHECK(decode_pgm(bytes)(1, 1) == 4.0 / 255.0);
}

TEST_CASE("all-zero image loads as zeros") {
  std::vector<std::uint8_t> bytes = bytes_of("P5\n4 3\n255\n");
  bytes.resize(bytes.size() + 12, 0);
  const GrayImage img = decode_pgm(bytes);
  for (double v : img.samples()) CHECK(v == 0.0);
}

TEST_CASE("PGM writer output is byte exact") {
  GrayImage img(3, 2, std::vector<double>{0.5, 1.7, -0.2, 0.0, 1.0, 64.0 / 255.0});
  const auto bytes = encode_pgm(img);
  const std::string header = "P5\n3 2\n255\n";
  REQUIRE(bytes.size() == header.size() + 6);
  CHECK(std::string(bytes.begin(), bytes.begin() + static_cast<long>(header.size())) == header);
  const std::vector<std::uint8_t> raster(bytes.begin() + static_cast<long>(header.size()), bytes.end());
  // 0.5 rounds half-up to 128; out-of-range samples clamp.
  CHECK(raster == std::vector<std::uint8_t>{128, 255, 0, 0, 255, 64});
}

TEST_CASE("quantisation never leaves [0,255]") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> wide(-5.0, 5.0);
  for (int i = 0; i < 10000; ++i) {
    const unsigned q = quantize_sample(wide(rng));
    CHECK(q <= 255u);
  }
  CHECK(quantize_sample(std::nan("")) == 0);
}

TEST_CASE("save then load is the identity on 8-bit images (PGM and PNG)") {
  const auto dir = scratch_dir("imageio_roundtrip");
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> dim(2, 40);
  for (int trial = 0; trial < 25; ++trial) {
    const GrayImage img = random_8bit_image(dim(rng), dim(rng), rng);
    for (const char* name : {"a.pgm", "a.png"}) {
      save_image(img, dir / name);
      CHECK(load_image(dir / name) == img);
    }
  }
}

TEST_CASE("colour PNG is reduced with BT.601 luma") {
  const auto dir = scratch_dir("imageio_color");
  const std::vector<std::uint8_t> rgb = {255, 0, 0, 0, 255, 0, 0, 0, 255, 10, 200, 30};
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = 2;
  image.height = 2;
  image.format = PNG_FORMAT_RGB;
  const auto path = dir / "rgb.png";
  REQUIRE(png_image_write_to_file(&image, path.string().c_str(), 0, rgb.data(), 0, nullptr));
  const GrayImage img = load_image(path);
  // round(0.299*255)=76, round(0.587*255)=150, round(0.114*255)=29,
  // round(0.299*10 + 0.587*200 + 0.114*30)=124
  CHECK(img(0, 0) == 76.0 / 255.0);
  CHECK(img(0, 1) == 150.0 / 255.0);
  CHECK(img(1, 0) == 29.0 / 255.0);
  CHECK(img(1, 1) == 124.0 / 255.0);
}

TEST_CASE("JPEG round trip at high quality stays close") {
  std::mt19937_64 rng(5);
  GrayImage img(64, 48);
  for (std::size_t r = 0; r < img.height(); ++r) {
    for (std::size_t c = 0; c < img.width(); ++c) img(r, c) = quantize_sample(0.2 + 0.006 * (r + c)) / 255.0;
  }
  const GrayImage back = decode_jpeg(encode_jpeg(img, 100));
  REQUIRE(back.same_shape(img));
  CHECK(psnr(img, back) > 45.0);

  const auto dir = scratch_dir("imageio_jpeg");
  save_image(img, dir / "x.jpg");
  CHECK(load_image(dir / "x.jpg").same_shape(img));
  CHECK(kind_of([&] { encode_jpeg(img, 0); }) == ErrorKind::InvalidParam);
  CHECK(kind_of([&] { encode_jpeg(img, 101); }) == ErrorKind::InvalidParam);
}

TEST_CASE("load errors are classified") {
  const auto dir = scratch_dir("imageio_errors");
  CHECK(kind_of([&] { load_image(dir / "missing.pgm"); }) == ErrorKind::FileNotFound);

  write_bytes(dir / "junk.bin", {1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(kind_of([&] { load_image(dir / "junk.bin"); }) == ErrorKind::UnsupportedFormat);

  auto truncated = bytes_of("P5\n4 4\n255\n");
  truncated.resize(truncated.size() + 5, 7);
  write_bytes(dir / "short.pgm", truncated);
  CHECK(kind_of([&] { load_image(dir / "short.pgm"); }) == ErrorKind::CorruptImage);

  write_bytes(dir / "deep.pgm", bytes_of("P5\n2 2\n65535\n01234567"));
  CHECK(kind_of([&] { load_image(dir / "deep.pgm"); }) == ErrorKind::UnsupportedFormat);

  auto png = encode_png(GrayImage(8, 8, 0.5));
  png.resize(png.size() / 2);
  write_bytes(dir / "half.png", png);
  CHECK(kind_of([&] { load_image(dir / "half.png"); }) == ErrorKind::CorruptImage);

  CHECK(kind_of([&] { save_image(GrayImage(2, 2), dir / "x.tiff"); }) == ErrorKind::UnsupportedFormat);
  CHECK(kind_of([&] { save_image(GrayImage(2, 2), dir / "no_such_dir" / "x.pgm"); }) == ErrorKind::IoError);
}

TEST_CASE("GrayImage enforces its minimum size") {
  CHECK(kind_of([] { GrayImage(1, 4); }) == ErrorKind::InvalidDimensions);
  CHECK(kind_of([] { GrayImage(2, 2, std::vector<double>(3)); }) == ErrorKind::InvalidDimensions);
}

TEST_CASE("resize preserves constant images exactly") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> dim(2, 70);
  std::uniform_real_distribution<double> level(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const double c = level(rng);
    const GrayImage img(dim(rng), dim(rng), c);
    for (auto method : {ResizeMethod::Nearest, ResizeMethod::Bilinear}) {
      const GrayImage out = resize(img, dim(rng), dim(rng), method);
      for (double v : out.samples()) REQUIRE(v == c);
    }
  }
}

TEST_CASE("nearest upsampling by two replicates each pixel into a 2x2 block") {
  const GrayImage img(2, 2, std::vector<double>{1.0, 0.0, 0.0, 1.0});
  const GrayImage out = resize(img, 4, 4, ResizeMethod::Nearest);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) CHECK(out(r, c) == img(r / 2, c / 2));
  }
}

TEST_CASE("bilinear 512->256->512 recovers a horizontal ramp to within 1/255") {
  GrayImage ramp(512, 512);
  for (std::size_t r = 0; r < 512; ++r) {
    for (std::size_t c = 0; c < 512; ++c) ramp(r, c) = static_cast<double>(c) / 511.0;
  }
  const GrayImage back =
      resize(resize(ramp, 256, 256, ResizeMethod::Bilinear), 512, 512, ResizeMethod::Bilinear);
  CHECK(max_abs_diff(ramp, back) <= 1.0 / 255.0);
}

TEST_CASE("resize rejects targets below 2x2") {
  CHECK(kind_of([] { resize(GrayImage(4, 4), 1, 4, ResizeMethod::Bilinear); }) == ErrorKind::InvalidDimensions);
}
