#include "gelinspect/image_io.hpp"

#include <jpeglib.h>
#include <png.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>

namespace gelinspect {

namespace {

// Luma weights 0.299/0.587/0.114 in thousandths. Integer accumulation keeps
// the only rounding in the final division, so white maps to exactly 1.
constexpr std::uint64_t kLumaR = 299;
constexpr std::uint64_t kLumaG = 587;
constexpr std::uint64_t kLumaB = 114;

double luma(std::uint64_t r, std::uint64_t g, std::uint64_t b, std::uint64_t max_value) {
  return static_cast<double>(kLumaR * r + kLumaG * g + kLumaB * b) / static_cast<double>(1000 * max_value);
}

// ---------------------------------------------------------------- PNG -----

// Everything libpng touches between setjmp and a possible longjmp lives on
// the heap behind a pointer fixed before setjmp.
struct PngReadState {
  std::span<const std::uint8_t> data;
  std::size_t pos = 0;
  char message[256] = "malformed PNG";
  std::vector<std::uint8_t> pixels;
  std::vector<png_bytep> rows;
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t n) {
  auto* st = static_cast<PngReadState*>(png_get_io_ptr(png));
  if (n > st->data.size() - st->pos) {
    png_error(png, "unexpected end of PNG data");
  }
  std::memcpy(out, st->data.data() + st->pos, n);
  st->pos += n;
}

void png_record_error(png_structp png, png_const_charp msg) {
  auto* st = static_cast<PngReadState*>(png_get_error_ptr(png));
  std::snprintf(st->message, sizeof(st->message), "%s", msg);
  png_longjmp(png, 1);
}

void png_ignore_warning(png_structp, png_const_charp) {}

GrayImage decode_png(std::span<const std::uint8_t> bytes) {
  auto st = std::make_unique<PngReadState>();
  st->data = bytes;
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, st.get(), png_record_error, png_ignore_warning);
  if (png == nullptr) throw Error(ErrorCode::codec_failure, "libpng initialization failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error(ErrorCode::codec_failure, "libpng initialization failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::unreadable_file, st->message);
  }
  png_set_read_fn(png, st.get(), png_read_from_memory);
  png_read_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int color_type = png_get_color_type(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);

  const int channels = png_get_channels(png, info);
  const int depth = png_get_bit_depth(png, info);
  const std::size_t rowbytes = png_get_rowbytes(png, info);
  st->pixels.resize(rowbytes * height);
  st->rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) st->rows[y] = st->pixels.data() + y * rowbytes;
  png_read_image(png, st->rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  if (width == 0 || height == 0) throw Error(ErrorCode::unreadable_file, "zero-dimension PNG");
  if ((channels != 1 && channels != 3) || (depth != 8 && depth != 16)) {
    throw Error(ErrorCode::unsupported_format, "unsupported PNG pixel layout");
  }
  const std::uint64_t max_value = depth == 16 ? 65535 : 255;
  const std::size_t bytes_per_sample = depth == 16 ? 2 : 1;
  auto sample = [&](const std::uint8_t* p) -> std::uint64_t {
    return bytes_per_sample == 2 ? static_cast<std::uint64_t>((p[0] << 8) | p[1]) : p[0];
  };
  RealMatrix m(height, width);
  for (std::size_t y = 0; y < height; ++y) {
    const std::uint8_t* row = st->pixels.data() + y * rowbytes;
    for (std::size_t x = 0; x < width; ++x) {
      const std::uint8_t* px = row + x * channels * bytes_per_sample;
      if (channels == 1) {
        m(y, x) = static_cast<double>(sample(px)) / static_cast<double>(max_value);
      } else {
        m(y, x) = luma(sample(px), sample(px + bytes_per_sample), sample(px + 2 * bytes_per_sample),
                       max_value);
      }
    }
  }
  return GrayImage(std::move(m));
}

struct PngWriteState {
  Bytes out;
  char message[256] = "PNG encoding failed";
  std::vector<png_bytep> rows;
};

void png_write_to_memory(png_structp png, png_bytep data, png_size_t n) {
  auto* st = static_cast<PngWriteState*>(png_get_io_ptr(png));
  st->out.insert(st->out.end(), data, data + n);
}

void png_flush_noop(png_structp) {}

void png_write_error(png_structp png, png_const_charp msg) {
  auto* st = static_cast<PngWriteState*>(png_get_error_ptr(png));
  std::snprintf(st->message, sizeof(st->message), "%s", msg);
  png_longjmp(png, 1);
}

// `samples` is row-major with `channels` interleaved big-endian samples.
Bytes encode_png(std::size_t rows, std::size_t cols, int channels, int depth,
                 std::vector<std::uint8_t>& samples) {
  auto st = std::make_unique<PngWriteState>();
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, st.get(), png_write_error, png_ignore_warning);
  if (png == nullptr) throw Error(ErrorCode::codec_failure, "libpng initialization failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    throw Error(ErrorCode::codec_failure, "libpng initialization failed");
  }
  const std::size_t rowbytes = cols * static_cast<std::size_t>(channels) * (depth / 8);
  st->rows.resize(rows);
  for (std::size_t y = 0; y < rows; ++y) st->rows[y] = samples.data() + y * rowbytes;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::codec_failure, st->message);
  }
  png_set_write_fn(png, st.get(), png_write_to_memory, png_flush_noop);
  png_set_IHDR(png, info, static_cast<png_uint_32>(cols), static_cast<png_uint_32>(rows), depth,
               channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(png, 6);
  png_write_info(png, info);
  png_write_image(png, st->rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return std::move(st->out);
}

// --------------------------------------------------------------- JPEG -----

struct JpegErrorState {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX] = "malformed JPEG";
};

void jpeg_fail(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorState*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

// libjpeg reports truncated or corrupt entropy data as warnings and keeps
// going with filler; a forensic tool must not analyze filler.
void jpeg_warning_is_fatal(j_common_ptr cinfo, int msg_level) {
  if (msg_level < 0) jpeg_fail(cinfo);
}

struct JpegDecodeState {
  jpeg_decompress_struct cinfo;
  JpegErrorState err;
  std::vector<std::uint8_t> pixels;
};

GrayImage decode_jpeg(std::span<const std::uint8_t> bytes) {
  auto st = std::make_unique<JpegDecodeState>();
  st->cinfo.err = jpeg_std_error(&st->err.base);
  st->err.base.error_exit = jpeg_fail;
  st->err.base.emit_message = jpeg_warning_is_fatal;
  if (setjmp(st->err.jump)) {
    jpeg_destroy_decompress(&st->cinfo);
    throw Error(ErrorCode::unreadable_file, st->err.message);
  }
  jpeg_create_decompress(&st->cinfo);
  jpeg_mem_src(&st->cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&st->cinfo, TRUE);
  const bool gray = st->cinfo.jpeg_color_space == JCS_GRAYSCALE;
  st->cinfo.out_color_space = gray ? JCS_GRAYSCALE : JCS_RGB;
  st->cinfo.dct_method = JDCT_ISLOW;
  jpeg_start_decompress(&st->cinfo);
  const std::size_t width = st->cinfo.output_width;
  const std::size_t height = st->cinfo.output_height;
  const std::size_t channels = static_cast<std::size_t>(st->cinfo.output_components);
  st->pixels.resize(width * height * channels);
  while (st->cinfo.output_scanline < st->cinfo.output_height) {
    JSAMPROW row = st->pixels.data() + st->cinfo.output_scanline * width * channels;
    jpeg_read_scanlines(&st->cinfo, &row, 1);
  }
  jpeg_finish_decompress(&st->cinfo);
  jpeg_destroy_decompress(&st->cinfo);

  if (width == 0 || height == 0) throw Error(ErrorCode::unreadable_file, "zero-dimension JPEG");
  RealMatrix m(height, width);
  for (std::size_t i = 0; i < width * height; ++i) {
    const std::uint8_t* px = st->pixels.data() + i * channels;
    m.values()[i] = channels == 1 ? px[0] / 255.0 : luma(px[0], px[1], px[2], 255);
  }
  return GrayImage(std::move(m));
}

struct JpegEncodeState {
  jpeg_compress_struct cinfo;
  JpegErrorState err;
  unsigned char* buffer = nullptr;
  unsigned long size = 0;
  std::vector<std::uint8_t> samples;
};

// ---------------------------------------------------------------- BMP -----

std::uint32_t le32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) | (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

std::uint16_t le16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

void put_le32(Bytes& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_le16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

GrayImage decode_bmp(std::span<const std::uint8_t> b) {
  auto need = [&](std::size_t n) {
    if (b.size() < n) throw Error(ErrorCode::unreadable_file, "truncated BMP");
  };
  need(26);
  const std::uint32_t pixel_offset = le32(b, 10);
  const std::uint32_t header_size = le32(b, 14);
  if (header_size < 40) throw Error(ErrorCode::unsupported_format, "BMP core headers are not supported");
  need(14 + 40);
  const auto raw_width = static_cast<std::int32_t>(le32(b, 18));
  const auto raw_height = static_cast<std::int32_t>(le32(b, 22));
  const std::uint16_t bpp = le16(b, 28);
  const std::uint32_t compression = le32(b, 30);
  std::uint32_t palette_size = le32(b, 46);
  if (raw_width <= 0 || raw_height == 0) throw Error(ErrorCode::unreadable_file, "zero-dimension BMP");
  if (bpp != 8 && bpp != 24 && bpp != 32) {
    throw Error(ErrorCode::unsupported_format, "BMP bit depth " + std::to_string(bpp));
  }
  if (compression != 0 && !(compression == 3 && bpp == 32)) {
    throw Error(ErrorCode::unsupported_format, "compressed BMP");
  }
  const bool bottom_up = raw_height > 0;
  const std::size_t width = static_cast<std::size_t>(raw_width);
  const std::size_t height = static_cast<std::size_t>(bottom_up ? raw_height : -static_cast<std::int64_t>(raw_height));
  const std::size_t stride = ((width * bpp + 31) / 32) * 4;

  std::vector<double> palette;
  if (bpp == 8) {
    if (palette_size == 0) palette_size = 256;
    if (palette_size > 256) throw Error(ErrorCode::unreadable_file, "BMP palette too large");
    const std::size_t pal_at = 14 + header_size;
    need(pal_at + 4 * palette_size);
    for (std::uint32_t i = 0; i < palette_size; ++i) {
      const std::size_t at = pal_at + 4 * i;
      palette.push_back(luma(b[at + 2], b[at + 1], b[at], 255));
    }
  }
  need(static_cast<std::size_t>(pixel_offset) + stride * height);

  RealMatrix m(height, width);
  for (std::size_t y = 0; y < height; ++y) {
    const std::size_t src_row = bottom_up ? height - 1 - y : y;
    const std::size_t at = pixel_offset + src_row * stride;
    for (std::size_t x = 0; x < width; ++x) {
      if (bpp == 8) {
        const std::uint8_t idx = b[at + x];
        if (idx >= palette.size()) throw Error(ErrorCode::unreadable_file, "BMP palette index out of range");
        m(y, x) = palette[idx];
      } else {
        const std::size_t px = at + x * (bpp / 8);
        m(y, x) = luma(b[px + 2], b[px + 1], b[px], 255);
      }
    }
  }
  return GrayImage(std::move(m));
}

}  // namespace

ImageFormat sniff_format(std::span<const std::uint8_t> bytes) {
  static constexpr std::uint8_t kPng[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  if (bytes.size() >= 8 && std::equal(kPng, kPng + 8, bytes.begin())) return ImageFormat::png;
  if (bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF) return ImageFormat::jpeg;
  if (bytes.size() >= 2 && bytes[0] == 'B' && bytes[1] == 'M') return ImageFormat::bmp;
  throw Error(ErrorCode::unsupported_format, "not a PNG, JPEG or BMP stream");
}

GrayImage decode_image(std::span<const std::uint8_t> bytes) {
  switch (sniff_format(bytes)) {
    case ImageFormat::png: return decode_png(bytes);
    case ImageFormat::jpeg: return decode_jpeg(bytes);
    case ImageFormat::bmp: return decode_bmp(bytes);
  }
  throw Error(ErrorCode::unsupported_format, "unknown image format");
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::unreadable_file, "cannot open " + path.string());
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::unreadable_file, "read error on " + path.string());
  return data;
}

GrayImage load_image(const std::filesystem::path& path) {
  const Bytes data = read_file(path);
  if (data.empty()) throw Error(ErrorCode::unreadable_file, path.string() + " is empty");
  try {
    return decode_image(data);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  static std::atomic<unsigned long> counter{0};
  std::filesystem::path tmp = path;
  tmp += ".tmp-" + std::to_string(::getpid()) + "-" + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::write_failure, "cannot create " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::write_failure, "short write to " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::write_failure, "cannot move output into " + path.string());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
  write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::vector<std::uint8_t> to_gray8(const RealMatrix& m) {
  std::vector<std::uint8_t> out(m.size());
  const auto v = m.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(std::lround(std::clamp(v[i], 0.0, 1.0) * 255.0));
  }
  return out;
}

GrayImage quantize8(const GrayImage& image) {
  const auto q = to_gray8(image.matrix());
  RealMatrix m(image.rows(), image.cols());
  for (std::size_t i = 0; i < q.size(); ++i) m.values()[i] = q[i] / 255.0;
  return GrayImage(std::move(m));
}

Bytes encode_png_gray8(const RealMatrix& m) {
  auto samples = to_gray8(m);
  return encode_png(m.rows(), m.cols(), 1, 8, samples);
}

Bytes encode_png_gray16(const RealMatrix& m) {
  std::vector<std::uint8_t> samples;
  samples.reserve(m.size() * 2);
  for (double v : m.values()) {
    const auto s = static_cast<std::uint16_t>(std::lround(std::clamp(v, 0.0, 1.0) * 65535.0));
    samples.push_back(static_cast<std::uint8_t>(s >> 8));
    samples.push_back(static_cast<std::uint8_t>(s & 0xFF));
  }
  return encode_png(m.rows(), m.cols(), 1, 16, samples);
}

Bytes encode_png_mask(const IndicatorMap& map) {
  std::vector<std::uint8_t> samples(map.size());
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = map.values()[i] != 0 ? 255 : 0;
  return encode_png(map.rows(), map.cols(), 1, 8, samples);
}

Bytes encode_png_rgb8(const OverlayImage& rgb) {
  std::vector<std::uint8_t> samples;
  samples.reserve(rgb.size() * 3);
  auto q = [](double v) { return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); };
  for (const Rgb& px : rgb.values()) {
    samples.push_back(q(px.r));
    samples.push_back(q(px.g));
    samples.push_back(q(px.b));
  }
  return encode_png(rgb.rows(), rgb.cols(), 3, 8, samples);
}

Bytes encode_bmp_gray8(const RealMatrix& m) {
  const auto gray = to_gray8(m);
  const std::size_t stride = (m.cols() + 3) / 4 * 4;
  const std::uint32_t pixel_offset = 14 + 40 + 256 * 4;
  const auto file_size = static_cast<std::uint32_t>(pixel_offset + stride * m.rows());
  Bytes out;
  out.reserve(file_size);
  out.push_back('B');
  out.push_back('M');
  put_le32(out, file_size);
  put_le32(out, 0);
  put_le32(out, pixel_offset);
  put_le32(out, 40);
  put_le32(out, static_cast<std::uint32_t>(m.cols()));
  put_le32(out, static_cast<std::uint32_t>(m.rows()));
  put_le16(out, 1);
  put_le16(out, 8);
  put_le32(out, 0);
  put_le32(out, static_cast<std::uint32_t>(stride * m.rows()));
  put_le32(out, 2835);
  put_le32(out, 2835);
  put_le32(out, 256);
  put_le32(out, 0);
  for (int i = 0; i < 256; ++i) {
    const auto v = static_cast<std::uint8_t>(i);
    out.insert(out.end(), {v, v, v, 0});
  }
  for (std::size_t y = m.rows(); y-- > 0;) {
    const std::uint8_t* row = gray.data() + y * m.cols();
    out.insert(out.end(), row, row + m.cols());
    out.insert(out.end(), stride - m.cols(), 0);
  }
  return out;
}

Bytes encode_jpeg_gray(const GrayImage& image, int quality) {
  if (quality < 1 || quality > 100) {
    throw Error(ErrorCode::codec_failure, "JPEG quality must lie in 1..100, got " + std::to_string(quality));
  }
  auto st = std::make_unique<JpegEncodeState>();
  st->samples = to_gray8(image.matrix());
  st->cinfo.err = jpeg_std_error(&st->err.base);
  st->err.base.error_exit = jpeg_fail;
  if (setjmp(st->err.jump)) {
    jpeg_destroy_compress(&st->cinfo);
    std::free(st->buffer);
    throw Error(ErrorCode::codec_failure, st->err.message);
  }
  jpeg_create_compress(&st->cinfo);
  jpeg_mem_dest(&st->cinfo, &st->buffer, &st->size);
  st->cinfo.image_width = static_cast<JDIMENSION>(image.cols());
  st->cinfo.image_height = static_cast<JDIMENSION>(image.rows());
  st->cinfo.input_components = 1;
  st->cinfo.in_color_space = JCS_GRAYSCALE;
  jpeg_set_defaults(&st->cinfo);
  st->cinfo.dct_method = JDCT_ISLOW;
  jpeg_set_quality(&st->cinfo, quality, TRUE);
  jpeg_start_compress(&st->cinfo, TRUE);
  while (st->cinfo.next_scanline < st->cinfo.image_height) {
    JSAMPROW row = st->samples.data() + st->cinfo.next_scanline * image.cols();
    jpeg_write_scanlines(&st->cinfo, &row, 1);
  }
  jpeg_finish_compress(&st->cinfo);
  Bytes out(st->buffer, st->buffer + st->size);
  jpeg_destroy_compress(&st->cinfo);
  std::free(st->buffer);
  return out;
}

}  // namespace gelinspect
