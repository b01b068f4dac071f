#include "qir/qir_format.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <utility>

#include "qir/error.hpp"

namespace qir {

namespace {

constexpr std::array<std::uint8_t, 4> kContainerMagic = {'Q', 'I', 'R', '1'};
constexpr std::array<std::uint8_t, 4> kKeyMagic = {'Q', 'I', 'R', 'K'};
constexpr unsigned kMultiplicityBits = 32;

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large buffers in chunks
  while (!bytes.empty()) {
    const auto chunk = std::min<std::size_t>(bytes.size(), 1u << 30);
    crc = crc32(crc, bytes.data(), static_cast<uInt>(chunk));
    bytes = bytes.subspan(chunk);
  }
  return static_cast<std::uint32_t>(crc);
}

class ByteWriter {
 public:
  void bytes(std::span<const std::uint8_t> b) {
    out_.insert(out_.end(), b.begin(), b.end());
  }
  void u8(std::uint64_t v) { out_.push_back(static_cast<std::uint8_t>(v)); }
  void u32(std::uint64_t v) {
    for (int i = 0; i < 4; ++i) u8((v >> (8 * i)) & 0xff);
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8((v >> (8 * i)) & 0xff);
  }
  void append_crc() { u32(crc32_of(out_)); }
  std::vector<std::uint8_t>& buffer() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

class BitWriter {
 public:
  explicit BitWriter(std::vector<std::uint8_t>& out) : out_(out) {}

  void put(std::uint64_t value, unsigned width) {
    if (width > 32) {
      put_small(value >> 32, width - 32);
      width = 32;
    }
    put_small(value, width);
  }

  void flush() {
    if (pending_ > 0) {
      out_.push_back(static_cast<std::uint8_t>(acc_ << (8 - pending_)));
      pending_ = 0;
    }
  }

 private:
  void put_small(std::uint64_t value, unsigned width) {
    const std::uint64_t mask = (std::uint64_t{1} << width) - 1;
    acc_ = (acc_ << width) | (value & mask);
    pending_ += width;
    while (pending_ >= 8) {
      pending_ -= 8;
      out_.push_back(static_cast<std::uint8_t>(acc_ >> pending_));
    }
  }

  std::vector<std::uint8_t>& out_;
  std::uint64_t acc_ = 0;  // only the low `pending_` bits are live
  unsigned pending_ = 0;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t position() const { return pos_; }
  void seek(std::size_t pos) { pos_ = pos; }
  std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }

  std::uint64_t u8() { return take(1); }
  std::uint64_t u32() { return take(4); }
  std::uint64_t u64() { return take(8); }

 private:
  std::uint64_t take(std::size_t n) {
    if (bytes_.size() - pos_ < n) {
      throw Error(Errc::TruncatedPayload, "unexpected end of file");
    }
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      v |= std::uint64_t{bytes_[pos_ + i]} << (8 * i);
    }
    pos_ += n;
    return v;
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint64_t get(unsigned width) {
    if (width > 32) {
      const std::uint64_t high = get_small(width - 32);
      return (high << 32) | get_small(32);
    }
    return get_small(width);
  }

  /// Whole bytes consumed; the unread tail of the last byte is padding.
  std::size_t bytes_used() const { return pos_; }
  bool padding_is_zero() const {
    return (acc_ & ((std::uint64_t{1} << available_) - 1)) == 0;
  }

 private:
  std::uint64_t get_small(unsigned width) {
    while (available_ < width) {
      if (pos_ >= bytes_.size()) {
        throw Error(Errc::TruncatedPayload, "bit stream ends inside a record");
      }
      acc_ = (acc_ << 8) | bytes_[pos_++];
      available_ += 8;
    }
    available_ -= width;
    return (acc_ >> available_) & ((std::uint64_t{1} << width) - 1);
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
  std::uint64_t acc_ = 0;
  unsigned available_ = 0;
};

void check_and_strip_crc(std::span<const std::uint8_t>& bytes,
                         std::span<const std::uint8_t, 4> magic,
                         std::size_t min_size) {
  if (bytes.size() < min_size) {
    throw Error(Errc::BadMagic, "file too short to carry a header");
  }
  // Checksum before magic: a flipped magic bit reports BadChecksum.
  const auto body = bytes.first(bytes.size() - 4);
  ByteReader tail(bytes.last(4));
  if (crc32_of(body) != tail.u32()) {
    throw Error(Errc::BadChecksum, "CRC-32 mismatch");
  }
  if (!std::equal(magic.begin(), magic.end(), bytes.begin())) {
    throw Error(Errc::BadMagic, "bad magic number");
  }
  bytes = body;
}

}  // namespace

std::string_view to_string(ColorSpace space) {
  switch (space) {
    case ColorSpace::Gray: return "gray";
    case ColorSpace::Rgb: return "rgb";
    case ColorSpace::Yuv: return "yuv";
  }
  return "unknown";
}

std::vector<std::uint8_t> write_container(const QirContainer& container) {
  if (container.compression != kCompressionNone) {
    throw Error(Errc::UnsupportedCompression,
                "only uncompressed containers can be written");
  }
  const PaddingRecord& pad = container.padding;
  if (pad.original_rows > std::numeric_limits<std::uint32_t>::max() ||
      pad.original_cols > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(Errc::OutOfRange, "image dimensions exceed 32 bits");
  }
  if (container.channels.empty() || container.channels.size() > 255) {
    throw Error(Errc::OutOfRange, "container needs 1 to 255 channels");
  }
  const unsigned m = container.row_width();
  const unsigned n = container.col_width();

  ByteWriter w;
  w.bytes(kContainerMagic);
  w.u8(container.version);
  w.u8(container.compression);
  w.u8(m);
  w.u8(n);
  w.u8(container.bit_depth);
  w.u8(container.channels.size());
  w.u8(static_cast<std::uint8_t>(container.color_space));

  for (const auto& index : container.channels) {
    if (index.rows() != pad.rows || index.cols() != pad.cols) {
      throw Error(Errc::DimensionMismatch,
                  "channel grid does not match the padding record");
    }
    const unsigned value_width = storage_width(index.max_value());
    w.u8(value_width);
    w.u32(index.groups().size());
    BitWriter bits(w.buffer());
    for (const auto& group : index.groups()) {
      bits.put(group.value, value_width);
      bits.put(group.codes.size(), kMultiplicityBits);
      for (std::uint64_t code : group.codes) bits.put(code, m + n);
    }
    bits.flush();
  }
  w.u32(pad.original_rows);
  w.u32(pad.original_cols);
  w.append_crc();
  return std::move(w.buffer());
}

QirContainer read_container(std::span<const std::uint8_t> bytes) {
  check_and_strip_crc(bytes, kContainerMagic, 4 + 7 + 8 + 4);
  ByteReader r(bytes);
  r.u32();  // magic

  QirContainer c;
  c.version = static_cast<std::uint8_t>(r.u8());
  if (c.version != kFormatVersion) {
    throw Error(Errc::BadVersion,
                "unsupported container version " + std::to_string(c.version));
  }
  c.compression = static_cast<std::uint8_t>(r.u8());
  if (c.compression != kCompressionNone) {
    throw Error(Errc::UnsupportedCompression,
                "compression method " + std::to_string(c.compression) +
                    " is not supported");
  }
  const unsigned m = static_cast<unsigned>(r.u8());
  const unsigned n = static_cast<unsigned>(r.u8());
  c.bit_depth = static_cast<unsigned>(r.u8());
  const std::size_t channel_count = r.u8();
  const auto space = r.u8();
  if (m < 1 || n < 1 || m + n > 62) {
    throw Error(Errc::MalformedContainer, "invalid register widths");
  }
  if (c.bit_depth < 1 || c.bit_depth > 32) {
    throw Error(Errc::MalformedContainer, "invalid bit depth");
  }
  if (space > 2) {
    throw Error(Errc::MalformedContainer, "unknown color space");
  }
  c.color_space = static_cast<ColorSpace>(space);
  const std::size_t expected_channels = c.color_space == ColorSpace::Gray ? 1 : 3;
  if (channel_count != expected_channels) {
    throw Error(Errc::MalformedContainer,
                std::to_string(channel_count) + " channels for color space " +
                    std::string(to_string(c.color_space)));
  }

  // Upper bound on locations; the exact count needs the padding record.
  const std::uint64_t max_locations = std::uint64_t{1} << (m + n);
  std::vector<std::vector<AmplitudeGroup>> raw(channel_count);
  for (auto& groups : raw) {
    const unsigned value_width = static_cast<unsigned>(r.u8());
    if (value_width < 1 || value_width > 32) {
      throw Error(Errc::MalformedContainer, "invalid value width");
    }
    const std::uint64_t group_count = r.u32();
    if (group_count > max_locations) {
      throw Error(Errc::MultiplicityMismatch, "more groups than locations");
    }
    BitReader bits(r.rest());
    std::uint64_t seen = 0;
    groups.reserve(group_count);
    for (std::uint64_t g = 0; g < group_count; ++g) {
      AmplitudeGroup group;
      group.value = static_cast<std::uint32_t>(bits.get(value_width));
      const std::uint64_t multiplicity = bits.get(kMultiplicityBits);
      seen += multiplicity;
      if (seen > max_locations) {
        throw Error(Errc::MultiplicityMismatch,
                    "multiplicities exceed the location count");
      }
      group.codes.reserve(multiplicity);
      for (std::uint64_t i = 0; i < multiplicity; ++i) {
        group.codes.push_back(bits.get(m + n));
      }
      groups.push_back(std::move(group));
    }
    if (!bits.padding_is_zero()) {
      throw Error(Errc::MalformedContainer, "nonzero channel padding bits");
    }
    r.seek(r.position() + bits.bytes_used());
  }

  const std::uint64_t original_rows = r.u32();
  const std::uint64_t original_cols = r.u32();
  if (!r.rest().empty()) {
    throw Error(Errc::MalformedContainer, "trailing bytes after padding record");
  }
  if (original_rows == 0 || original_cols == 0) {
    throw Error(Errc::MalformedContainer, "zero image dimension");
  }
  c.padding = padding_for(original_rows, original_cols);
  if (c.row_width() != m || c.col_width() != n) {
    throw Error(Errc::MalformedContainer,
                "register widths disagree with the padding record");
  }
  for (auto& groups : raw) {
    std::uint64_t total = 0;
    for (const auto& g : groups) total += g.codes.size();
    if (total != c.padding.padded_pixels()) {
      throw Error(Errc::MultiplicityMismatch,
                  "channel lists " + std::to_string(total) + " locations for a " +
                      std::to_string(c.padding.padded_pixels()) + "-pixel grid");
    }
    c.channels.emplace_back(c.padding.rows, c.padding.cols, std::move(groups));
  }
  return c;
}

std::vector<std::uint8_t> write_key(const QirKey& key) {
  if (key.channels.empty() || key.channels.size() > 255) {
    throw Error(Errc::OutOfRange, "key needs 1 to 255 channels");
  }
  ByteWriter w;
  w.bytes(kKeyMagic);
  w.u8(key.channels.size());
  for (const auto& k : key.channels) w.u64(k.total());
  w.append_crc();
  return std::move(w.buffer());
}

QirKey read_key(std::span<const std::uint8_t> bytes) {
  check_and_strip_crc(bytes, kKeyMagic, 4 + 1 + 4);
  ByteReader r(bytes);
  r.u32();
  const std::size_t count = r.u8();
  if (count == 0) throw Error(Errc::MalformedContainer, "key has no channels");
  QirKey key;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t total = r.u64();
    if (total == 0) {
      throw Error(Errc::MalformedContainer, "key total must be >= 1");
    }
    key.channels.emplace_back(total);
  }
  if (!r.rest().empty()) {
    throw Error(Errc::MalformedContainer, "trailing bytes in key file");
  }
  return key;
}

StorageStats stats(const QirContainer& container) {
  StorageStats s;
  s.version = container.version;
  s.compression = container.compression;
  s.m = container.row_width();
  s.n = container.col_width();
  s.bit_depth = container.bit_depth;
  s.color_space = container.color_space;
  s.padding = container.padding;
  s.location_bits_per_pixel = s.m + s.n;
  s.padding_overhead_numerator =
      container.padding.padded_pixels() - container.padding.original_pixels();
  s.padding_overhead_denominator = container.padding.original_pixels();
  for (const auto& index : container.channels) {
    const unsigned value_width = storage_width(index.max_value());
    s.channel_distinct_amplitudes.push_back(index.groups().size());
    s.distinct_amplitudes += index.groups().size();
    for (const auto& group : index.groups()) {
      const std::uint64_t code_bits =
          std::uint64_t{group.codes.size()} * s.location_bits_per_pixel;
      s.location_code_bits += code_bits;
      s.payload_bits += value_width + kMultiplicityBits + code_bits;
    }
  }
  return s;
}

std::string format_stats(const StorageStats& s) {
  std::map<std::string, std::string> kv;
  kv["version"] = std::to_string(s.version);
  kv["compression"] = std::to_string(s.compression);
  kv["m"] = std::to_string(s.m);
  kv["n"] = std::to_string(s.n);
  kv["rows"] = std::to_string(s.padding.rows);
  kv["cols"] = std::to_string(s.padding.cols);
  kv["original_rows"] = std::to_string(s.padding.original_rows);
  kv["original_cols"] = std::to_string(s.padding.original_cols);
  kv["bit_depth"] = std::to_string(s.bit_depth);
  kv["color_space"] = std::string(to_string(s.color_space));
  kv["channels"] = std::to_string(s.channel_distinct_amplitudes.size());
  kv["location_bits_per_pixel"] = std::to_string(s.location_bits_per_pixel);
  kv["distinct_amplitudes"] = std::to_string(s.distinct_amplitudes);
  for (std::size_t i = 0; i < s.channel_distinct_amplitudes.size(); ++i) {
    kv["channel" + std::to_string(i) + ".distinct_amplitudes"] =
        std::to_string(s.channel_distinct_amplitudes[i]);
  }
  kv["padding_overhead"] = std::to_string(s.padding_overhead_numerator) + "/" +
                           std::to_string(s.padding_overhead_denominator);
  kv["location_code_bits"] = std::to_string(s.location_code_bits);
  kv["payload_bits"] = std::to_string(s.payload_bits);

  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

}  // namespace qir
