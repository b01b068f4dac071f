#pragma once

// QIR1 container and QIRK key file.
//
// QIR1, multi-byte header integers little-endian:
//
//   "QIR1" | version u8 | compression u8 | m u8 | n u8 | bit_depth u8
//   | channel_count u8 | color_space u8
//   | per channel: value_width u8, group_count u32, bit stream
//   | original_rows u32 | original_cols u32 | crc32 u32
//
// Each channel bit stream is MSB-first and holds, per amplitude group in
// ascending value order, the value (value_width bits), the multiplicity
// (32 bits) and the location codes ((m + n) bits each, ascending). The
// stream is zero-padded to a byte boundary at the end of the channel only.
// The CRC-32 covers every byte before it.
//
// QIRK: "QIRK" | channel_count u8 | per channel: amplitude sum u64 | crc32 u32
//
// The container never holds the amplitude sum or the gcd scale; without the
// key a decoder can only recover the image up to a positive factor.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qir/amplitude_norm.hpp"
#include "qir/image_io.hpp"
#include "qir/quantum_image.hpp"

namespace qir {

inline constexpr std::uint8_t kFormatVersion = 1;
inline constexpr std::uint8_t kCompressionNone = 0;

struct QirContainer {
  std::uint8_t version = kFormatVersion;
  std::uint8_t compression = kCompressionNone;
  unsigned bit_depth = 8;
  ColorSpace color_space = ColorSpace::Gray;
  PaddingRecord padding{1, 1, 1, 1};
  std::vector<AmplitudeLocationIndex> channels;

  unsigned row_width() const { return register_width(padding.rows); }
  unsigned col_width() const { return register_width(padding.cols); }

  friend bool operator==(const QirContainer&, const QirContainer&) = default;
};

struct QirKey {
  std::vector<DenominatorKey> channels;

  friend bool operator==(const QirKey&, const QirKey&) = default;
};

std::vector<std::uint8_t> write_container(const QirContainer& container);
QirContainer read_container(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> write_key(const QirKey& key);
QirKey read_key(std::span<const std::uint8_t> bytes);

struct StorageStats {
  unsigned version = 0;
  unsigned compression = 0;
  unsigned m = 0;
  unsigned n = 0;
  unsigned bit_depth = 0;
  ColorSpace color_space = ColorSpace::Gray;
  PaddingRecord padding{1, 1, 1, 1};
  /// m + n
  unsigned location_bits_per_pixel = 0;
  std::vector<std::size_t> channel_distinct_amplitudes;
  std::size_t distinct_amplitudes = 0;
  /// (padded pixels - original pixels) / original pixels, unreduced.
  std::uint64_t padding_overhead_numerator = 0;
  std::uint64_t padding_overhead_denominator = 1;
  /// Bits spent on location codes across all channels.
  std::uint64_t location_code_bits = 0;
  /// Bits of group headers plus location codes, before byte padding.
  std::uint64_t payload_bits = 0;
};

StorageStats stats(const QirContainer& container);

/// key=value lines, one per metric, sorted by key.
std::string format_stats(const StorageStats& stats);

std::string_view to_string(ColorSpace space);

}  // namespace qir
