#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gelinspect/matrix.hpp"

namespace gelinspect {

using Bytes = std::vector<std::uint8_t>;

enum class ImageFormat { png, jpeg, bmp };

/// Identifies the container from its magic bytes. Throws unsupported_format.
ImageFormat sniff_format(std::span<const std::uint8_t> bytes);

/// Decodes PNG, JPEG or BMP (8/16-bit gray, RGB, with or without alpha).
/// 8-bit samples are divided by 255, 16-bit samples by 65535, and color is
/// collapsed with luma weights 0.299/0.587/0.114. Alpha is ignored.
/// Truncated or corrupt data raises unreadable_file.
GrayImage decode_image(std::span<const std::uint8_t> bytes);

/// Reads the file and decodes it. Throws unreadable_file or unsupported_format.
GrayImage load_image(const std::filesystem::path& path);

Bytes read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it into place, so `path`
/// either does not exist or holds the complete content.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

/// round(v * 255) per pixel; values are clamped to [0,1] first.
std::vector<std::uint8_t> to_gray8(const RealMatrix& m);

/// Snaps an image onto the 8-bit grid (what a lossless 8-bit file stores).
GrayImage quantize8(const GrayImage& image);

Bytes encode_png_gray8(const RealMatrix& m);
Bytes encode_png_gray16(const RealMatrix& m);
Bytes encode_png_mask(const IndicatorMap& map);  // 0 -> 0, 1 -> 255
Bytes encode_png_rgb8(const OverlayImage& rgb);
Bytes encode_bmp_gray8(const RealMatrix& m);

/// Baseline grayscale JPEG at libjpeg quality 1..100. Throws codec_failure.
Bytes encode_jpeg_gray(const GrayImage& image, int quality);

}  // namespace gelinspect
