#pragma once

// Netpbm ingestion (P2, P3, P5, P6), channel extraction with optional
// full-range BT.601 YUV conversion, and power-of-two padding.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qir/amplitude_norm.hpp"

namespace qir {

enum class PnmFormat : std::uint8_t {
  AsciiGray,    // P2
  AsciiColor,   // P3
  BinaryGray,   // P5
  BinaryColor,  // P6
};

/// Interleaved raster, row-major, `channels` samples per pixel.
class RasterImage {
 public:
  RasterImage(std::size_t width, std::size_t height, unsigned channels,
              std::uint32_t maxval, std::vector<std::uint32_t> samples);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  unsigned channels() const noexcept { return channels_; }
  std::uint32_t maxval() const noexcept { return maxval_; }
  /// ceil(log2(maxval + 1))
  unsigned bit_depth() const;
  std::span<const std::uint32_t> samples() const noexcept { return samples_; }

  std::uint32_t at(std::size_t row, std::size_t col, unsigned channel) const {
    return samples_[(row * width_ + col) * channels_ + channel];
  }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  unsigned channels_;
  std::uint32_t maxval_;
  std::vector<std::uint32_t> samples_;
};

RasterImage read_image(std::span<const std::uint8_t> bytes);

/// Writes one header line for the magic, one for the dimensions and one for
/// maxval. ASCII variants put each raster row on its own line.
std::vector<std::uint8_t> write_image(const RasterImage& image,
                                      bool binary = true);

enum class ColorSpace : std::uint8_t { Gray = 0, Rgb = 1, Yuv = 2 };

/// One AmplitudeMatrix per channel, rows = image height, cols = width.
/// Gray needs a one-channel image; Rgb and Yuv need three channels.
std::vector<AmplitudeMatrix> to_channels(const RasterImage& image,
                                         ColorSpace space);

/// Inverse of to_channels. Samples are clamped to [0, maxval].
RasterImage from_channels(std::span<const AmplitudeMatrix> channels,
                          ColorSpace space, std::uint32_t maxval);

struct Yuv {
  std::uint32_t y, u, v;
  friend bool operator==(const Yuv&, const Yuv&) = default;
};
struct Rgb {
  std::uint32_t r, g, b;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Full-range BT.601 in 16.16 fixed point; chroma is offset by
/// 2^(bit_depth-1) so every channel stays in [0, 2^bit_depth).
Yuv rgb_to_yuv(Rgb rgb, unsigned bit_depth);
Rgb yuv_to_rgb(Yuv yuv, unsigned bit_depth);

struct PaddingRecord {
  std::size_t original_rows;
  std::size_t original_cols;
  std::size_t rows;
  std::size_t cols;

  std::size_t original_pixels() const { return original_rows * original_cols; }
  std::size_t padded_pixels() const { return rows * cols; }

  friend bool operator==(const PaddingRecord&, const PaddingRecord&) = default;
};

PaddingRecord padding_for(std::size_t rows, std::size_t cols);

/// Zero-pads on the right and bottom up to the next powers of two.
std::pair<AmplitudeMatrix, PaddingRecord> pad_to_pow2(
    const AmplitudeMatrix& amplitudes);

AmplitudeMatrix crop(const AmplitudeMatrix& padded, const PaddingRecord& record);

}  // namespace qir
