#include "wavemark/imageio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include <jpeglib.h>
#include <png.h>

#include "wavemark/error.hpp"

namespace wavemark {

namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorKind::FileNotFound, path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::FileNotFound, path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::IoError, "short write to " + path.string());
}

GrayImage from_bytes(std::size_t width, std::size_t height, std::span<const std::uint8_t> px) {
  std::vector<double> samples(px.size());
  std::transform(px.begin(), px.end(), samples.begin(),
                 [](std::uint8_t b) { return static_cast<double>(b) / 255.0; });
  return GrayImage(width, height, std::move(samples));
}

std::vector<std::uint8_t> to_bytes(const GrayImage& img) {
  std::vector<std::uint8_t> px(img.area());
  auto s = img.samples();
  std::transform(s.begin(), s.end(), px.begin(), quantize_sample);
  return px;
}

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const double y = 0.299 * r + 0.587 * g + 0.114 * b;
  return static_cast<std::uint8_t>(std::min(255.0, std::floor(y + 0.5)));
}

// --- PGM ------------------------------------------------------------------

class PgmHeaderReader {
 public:
  explicit PgmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t next_number() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw Error(ErrorKind::CorruptImage, "malformed PGM header");
    }
    std::size_t v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
      if (v > (1u << 24)) throw Error(ErrorKind::CorruptImage, "PGM header value too large");
      ++pos_;
    }
    return v;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorKind::CorruptImage, "malformed PGM header");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

// --- PNG ------------------------------------------------------------------

struct PngImage {
  png_image image{};
  PngImage() {
    image.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

// --- JPEG -----------------------------------------------------------------

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

void jpeg_silent(j_common_ptr, int) {}

}  // namespace

ImageFormat format_for_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".pgm") return ImageFormat::Pgm;
  if (ext == ".png") return ImageFormat::Png;
  if (ext == ".jpg" || ext == ".jpeg") return ImageFormat::Jpeg;
  throw Error(ErrorKind::UnsupportedFormat, "unknown image extension '" + ext + "'");
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const auto px = to_bytes(img);
  out.insert(out.end(), px.begin(), px.end());
  return out;
}

GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw Error(ErrorKind::UnsupportedFormat, "not a binary PGM (P5)");
  }
  PgmHeaderReader header(bytes);
  const std::size_t width = header.next_number();
  const std::size_t height = header.next_number();
  const std::size_t maxval = header.next_number();
  if (maxval != 255) {
    throw Error(ErrorKind::UnsupportedFormat, "PGM maxval " + std::to_string(maxval) + " (only 255)");
  }
  const std::size_t offset = header.raster_offset();
  if (bytes.size() - std::min(offset, bytes.size()) < width * height) {
    throw Error(ErrorKind::CorruptImage, "PGM raster truncated");
  }
  return from_bytes(width, height, bytes.subspan(offset, width * height));
}

std::vector<std::uint8_t> encode_png(const GrayImage& img) {
  const auto px = to_bytes(img);
  PngImage png;
  png.image.width = static_cast<png_uint_32>(img.width());
  png.image.height = static_cast<png_uint_32>(img.height());
  png.image.format = PNG_FORMAT_GRAY;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&png.image, nullptr, &size, 0, px.data(), 0, nullptr)) {
    throw Error(ErrorKind::IoError, std::string("PNG encode: ") + png.image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&png.image, out.data(), &size, 0, px.data(), 0, nullptr)) {
    throw Error(ErrorKind::IoError, std::string("PNG encode: ") + png.image.message);
  }
  out.resize(size);
  return out;
}

GrayImage decode_png(std::span<const std::uint8_t> bytes) {
  PngImage png;
  if (!png_image_begin_read_from_memory(&png.image, bytes.data(), bytes.size())) {
    throw Error(ErrorKind::CorruptImage, std::string("PNG: ") + png.image.message);
  }
  const bool color = (png.image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  png.image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const std::size_t width = png.image.width;
  const std::size_t height = png.image.height;
  std::vector<std::uint8_t> raw(PNG_IMAGE_SIZE(png.image));
  if (!png_image_finish_read(&png.image, nullptr, raw.data(), 0, nullptr)) {
    throw Error(ErrorKind::CorruptImage, std::string("PNG: ") + png.image.message);
  }
  if (!color) return from_bytes(width, height, raw);
  std::vector<std::uint8_t> gray(width * height);
  for (std::size_t i = 0; i < gray.size(); ++i) {
    gray[i] = luma(raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]);
  }
  return from_bytes(width, height, gray);
}

std::vector<std::uint8_t> encode_jpeg(const GrayImage& img, int quality) {
  if (quality < 1 || quality > 100) {
    throw Error(ErrorKind::InvalidParam, "JPEG quality " + std::to_string(quality) + " not in [1,100]");
  }
  const auto px = to_bytes(img);
  jpeg_compress_struct cinfo{};
  JpegErrorManager err{};
  unsigned char* buffer = nullptr;
  unsigned long size = 0;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  err.base.emit_message = jpeg_silent;
  if (setjmp(err.jump)) {
    jpeg_destroy_compress(&cinfo);
    std::free(buffer);
    throw Error(ErrorKind::IoError, std::string("JPEG encode: ") + err.message);
  }
  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, &buffer, &size);
  cinfo.image_width = static_cast<JDIMENSION>(img.width());
  cinfo.image_height = static_cast<JDIMENSION>(img.height());
  cinfo.input_components = 1;
  cinfo.in_color_space = JCS_GRAYSCALE;
  jpeg_set_defaults(&cinfo);
  cinfo.dct_method = JDCT_ISLOW;
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = const_cast<JSAMPROW>(px.data() + cinfo.next_scanline * img.width());
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  std::vector<std::uint8_t> out(buffer, buffer + size);
  std::free(buffer);
  return out;
}

GrayImage decode_jpeg(std::span<const std::uint8_t> bytes) {
  jpeg_decompress_struct cinfo{};
  JpegErrorManager err{};
  std::vector<std::uint8_t> px;
  JDIMENSION width = 0;
  JDIMENSION height = 0;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  err.base.emit_message = jpeg_silent;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw Error(ErrorKind::CorruptImage, std::string("JPEG: ") + err.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  // The Y channel of a JFIF YCbCr stream is BT.601 luma already.
  if (cinfo.jpeg_color_space != JCS_GRAYSCALE && cinfo.jpeg_color_space != JCS_YCbCr) {
    jpeg_destroy_decompress(&cinfo);
    throw Error(ErrorKind::UnsupportedFormat, "JPEG colour space is neither gray nor YCbCr");
  }
  cinfo.out_color_space = JCS_GRAYSCALE;
  cinfo.dct_method = JDCT_ISLOW;
  jpeg_start_decompress(&cinfo);
  width = cinfo.output_width;
  height = cinfo.output_height;
  px.resize(static_cast<std::size_t>(width) * height);
  while (cinfo.output_scanline < height) {
    JSAMPROW row = px.data() + static_cast<std::size_t>(cinfo.output_scanline) * width;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return from_bytes(width, height, px);
}

GrayImage load_image(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') return decode_pgm(bytes);
  if (bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0) return decode_png(bytes);
  if (bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF) {
    return decode_jpeg(bytes);
  }
  throw Error(ErrorKind::UnsupportedFormat, path.string());
}

void save_image(const GrayImage& img, const std::filesystem::path& path) {
  switch (format_for_extension(path)) {
    case ImageFormat::Pgm: write_file(path, encode_pgm(img)); break;
    case ImageFormat::Png: write_file(path, encode_png(img)); break;
    case ImageFormat::Jpeg: write_file(path, encode_jpeg(img, 90)); break;
  }
}

GrayImage resize(const GrayImage& img, std::size_t new_width, std::size_t new_height,
                 ResizeMethod method) {
  if (new_width < 2 || new_height < 2) {
    throw Error(ErrorKind::InvalidDimensions, "resize target " + std::to_string(new_width) + "x" +
                                                  std::to_string(new_height) + " below 2x2");
  }
  const double sx = static_cast<double>(img.width()) / static_cast<double>(new_width);
  const double sy = static_cast<double>(img.height()) / static_cast<double>(new_height);
  const auto max_x = static_cast<double>(img.width() - 1);
  const auto max_y = static_cast<double>(img.height() - 1);
  GrayImage out(new_width, new_height);

  if (method == ResizeMethod::Nearest) {
    for (std::size_t r = 0; r < new_height; ++r) {
      const auto src_r = static_cast<std::size_t>(std::clamp(std::floor((r + 0.5) * sy), 0.0, max_y));
      for (std::size_t c = 0; c < new_width; ++c) {
        const auto src_c = static_cast<std::size_t>(std::clamp(std::floor((c + 0.5) * sx), 0.0, max_x));
        out(r, c) = img(src_r, src_c);
      }
    }
    return out;
  }

  for (std::size_t r = 0; r < new_height; ++r) {
    const double y = std::clamp((r + 0.5) * sy - 0.5, 0.0, max_y);
    const auto y0 = static_cast<std::size_t>(std::floor(y));
    const std::size_t y1 = std::min(y0 + 1, img.height() - 1);
    const double fy = y - static_cast<double>(y0);
    for (std::size_t c = 0; c < new_width; ++c) {
      const double x = std::clamp((c + 0.5) * sx - 0.5, 0.0, max_x);
      const auto x0 = static_cast<std::size_t>(std::floor(x));
      const std::size_t x1 = std::min(x0 + 1, img.width() - 1);
      const double fx = x - static_cast<double>(x0);
      // a + (b - a) * t keeps constant regions exact.
      const double top = img(y0, x0) + (img(y0, x1) - img(y0, x0)) * fx;
      const double bottom = img(y1, x0) + (img(y1, x1) - img(y1, x0)) * fx;
      out(r, c) = top + (bottom - top) * fy;
    }
  }
  return out;
}

}  // namespace wavemark
