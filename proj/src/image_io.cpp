#include "qir/image_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <limits>
#include <string>

#include "qir/error.hpp"

namespace qir {

namespace {

class PnmReader {
 public:
  explicit PnmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t position() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::uint8_t byte_at(std::size_t offset) const { return bytes_[pos_ + offset]; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  /// Returns false at end of input; throws on a non-digit token.
  bool next_number(std::uint64_t& out, Errc on_error, const char* what) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) return false;
    if (!std::isdigit(bytes_[pos_])) {
      throw Error(on_error, std::string("expected a number for ") + what);
    }
    std::uint64_t value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > std::numeric_limits<std::uint32_t>::max()) {
        throw Error(on_error, std::string(what) + " is too large");
      }
      ++pos_;
    }
    out = value;
    return true;
  }

  std::uint64_t header_number(const char* what) {
    std::uint64_t value = 0;
    if (!next_number(value, Errc::MalformedHeader, what)) {
      throw Error(Errc::MalformedHeader,
                  std::string("header ends before ") + what);
    }
    return value;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint32_t clamp_to(std::int64_t v, std::int64_t hi) {
  return static_cast<std::uint32_t>(std::clamp<std::int64_t>(v, 0, hi));
}

// 16.16 fixed-point BT.601 full-range coefficients. The chroma rows sum to
// zero so achromatic pixels land exactly on the chroma offset.
constexpr std::int64_t kRound = 1 << 15;

}  // namespace

RasterImage::RasterImage(std::size_t width, std::size_t height,
                         unsigned channels, std::uint32_t maxval,
                         std::vector<std::uint32_t> samples)
    : width_(width), height_(height), channels_(channels), maxval_(maxval),
      samples_(std::move(samples)) {
  if (channels_ != 1 && channels_ != 3) {
    throw Error(Errc::ColorSpaceMismatch, "raster images have 1 or 3 channels");
  }
  if (maxval_ == 0 || maxval_ > 65535) {
    throw Error(Errc::UnsupportedMaxval,
                "maxval " + std::to_string(maxval_) + " outside [1, 65535]");
  }
  if (width_ == 0 || height_ == 0 ||
      samples_.size() != width_ * height_ * channels_) {
    throw Error(Errc::DimensionMismatch, "raster sample count does not match " +
                                             std::to_string(width_) + "x" +
                                             std::to_string(height_));
  }
  for (std::uint32_t s : samples_) {
    if (s > maxval_) {
      throw Error(Errc::MalformedPayload,
                  "sample " + std::to_string(s) + " exceeds maxval " +
                      std::to_string(maxval_));
    }
  }
}

unsigned RasterImage::bit_depth() const {
  return static_cast<unsigned>(std::bit_width(maxval_));
}

RasterImage read_image(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw Error(Errc::MalformedHeader, "not a PNM file");
  }
  unsigned channels = 0;
  bool binary = false;
  switch (bytes[1]) {
    case '2': channels = 1; break;
    case '3': channels = 3; break;
    case '5': channels = 1; binary = true; break;
    case '6': channels = 3; binary = true; break;
    default:
      throw Error(Errc::MalformedHeader,
                  std::string("unsupported PNM magic P") +
                      static_cast<char>(bytes[1]));
  }
  PnmReader reader(bytes);
  reader.advance(2);
  if (reader.remaining() == 0 || !std::isspace(reader.byte_at(0))) {
    throw Error(Errc::MalformedHeader, "magic number must be followed by whitespace");
  }
  const std::uint64_t width = reader.header_number("width");
  const std::uint64_t height = reader.header_number("height");
  const std::uint64_t maxval = reader.header_number("maxval");
  if (width == 0 || height == 0) {
    throw Error(Errc::MalformedHeader, "image dimensions must be positive");
  }
  if (maxval == 0 || maxval > 65535) {
    throw Error(Errc::UnsupportedMaxval,
                "maxval " + std::to_string(maxval) + " outside [1, 65535]");
  }
  const std::uint64_t count = width * height * channels;
  if (count > (std::uint64_t{1} << 32)) {
    throw Error(Errc::MalformedHeader, "image too large");
  }

  std::vector<std::uint32_t> samples;
  samples.reserve(count);
  if (binary) {
    if (reader.remaining() == 0 || !std::isspace(reader.byte_at(0))) {
      throw Error(Errc::MalformedHeader, "maxval must be followed by whitespace");
    }
    reader.advance(1);
    const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
    if (reader.remaining() < count * sample_bytes) {
      throw Error(Errc::TruncatedPayload,
                  "expected " + std::to_string(count * sample_bytes) +
                      " raster bytes, found " +
                      std::to_string(reader.remaining()));
    }
    for (std::uint64_t i = 0; i < count; ++i) {
      std::uint32_t s = reader.byte_at(0);
      if (sample_bytes == 2) s = (s << 8) | reader.byte_at(1);
      reader.advance(sample_bytes);
      if (s > maxval) {
        throw Error(Errc::MalformedPayload,
                    "sample " + std::to_string(s) + " exceeds maxval");
      }
      samples.push_back(s);
    }
  } else {
    for (std::uint64_t i = 0; i < count; ++i) {
      std::uint64_t s = 0;
      if (!reader.next_number(s, Errc::MalformedPayload, "sample")) {
        throw Error(Errc::TruncatedPayload,
                    "expected " + std::to_string(count) + " samples, found " +
                        std::to_string(i));
      }
      if (s > maxval) {
        throw Error(Errc::MalformedPayload,
                    "sample " + std::to_string(s) + " exceeds maxval");
      }
      samples.push_back(static_cast<std::uint32_t>(s));
    }
  }
  return {width, height, channels, static_cast<std::uint32_t>(maxval),
          std::move(samples)};
}

std::vector<std::uint8_t> write_image(const RasterImage& image, bool binary) {
  const char magic = image.channels() == 1 ? (binary ? '5' : '2')
                                           : (binary ? '6' : '3');
  std::string header = std::string("P") + magic + "\n" +
                       std::to_string(image.width()) + " " +
                       std::to_string(image.height()) + "\n" +
                       std::to_string(image.maxval()) + "\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const auto samples = image.samples();
  if (binary) {
    const bool wide = image.maxval() > 255;
    out.reserve(out.size() + samples.size() * (wide ? 2 : 1));
    for (std::uint32_t s : samples) {
      if (wide) out.push_back(static_cast<std::uint8_t>(s >> 8));
      out.push_back(static_cast<std::uint8_t>(s & 0xff));
    }
    return out;
  }
  const std::size_t per_row = image.width() * image.channels();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::string token = std::to_string(samples[i]);
    out.insert(out.end(), token.begin(), token.end());
    out.push_back((i + 1) % per_row == 0 ? '\n' : ' ');
  }
  return out;
}

Yuv rgb_to_yuv(Rgb rgb, unsigned bit_depth) {
  const std::int64_t r = rgb.r, g = rgb.g, b = rgb.b;
  const std::int64_t hi = (std::int64_t{1} << bit_depth) - 1;
  const std::int64_t offset = std::int64_t{1} << (bit_depth - 1);
  const std::int64_t y = (19595 * r + 38470 * g + 7471 * b + kRound) >> 16;
  const std::int64_t u = ((-11058 * r - 21710 * g + 32768 * b + kRound) >> 16) + offset;
  const std::int64_t v = ((32768 * r - 27439 * g - 5329 * b + kRound) >> 16) + offset;
  return {clamp_to(y, hi), clamp_to(u, hi), clamp_to(v, hi)};
}

Rgb yuv_to_rgb(Yuv yuv, unsigned bit_depth) {
  const std::int64_t hi = (std::int64_t{1} << bit_depth) - 1;
  const std::int64_t offset = std::int64_t{1} << (bit_depth - 1);
  const std::int64_t y = yuv.y;
  const std::int64_t u = std::int64_t{yuv.u} - offset;
  const std::int64_t v = std::int64_t{yuv.v} - offset;
  const std::int64_t r = y + ((91881 * v + kRound) >> 16);
  const std::int64_t g = y + ((-22554 * u - 46802 * v + kRound) >> 16);
  const std::int64_t b = y + ((116130 * u + kRound) >> 16);
  return {clamp_to(r, hi), clamp_to(g, hi), clamp_to(b, hi)};
}

std::vector<AmplitudeMatrix> to_channels(const RasterImage& image,
                                         ColorSpace space) {
  const bool gray = space == ColorSpace::Gray;
  if (gray != (image.channels() == 1)) {
    throw Error(Errc::ColorSpaceMismatch,
                std::string(gray ? "gray" : "color") + " space requested for a " +
                    std::to_string(image.channels()) + "-channel image");
  }
  const std::size_t rows = image.height();
  const std::size_t cols = image.width();
  const unsigned depth = image.bit_depth();
  const unsigned nch = image.channels();

  std::vector<std::vector<std::uint32_t>> planes(
      nch, std::vector<std::uint32_t>(rows * cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t i = r * cols + c;
      if (space == ColorSpace::Yuv) {
        const Yuv yuv = rgb_to_yuv(
            {image.at(r, c, 0), image.at(r, c, 1), image.at(r, c, 2)}, depth);
        planes[0][i] = yuv.y;
        planes[1][i] = yuv.u;
        planes[2][i] = yuv.v;
      } else {
        for (unsigned ch = 0; ch < nch; ++ch) planes[ch][i] = image.at(r, c, ch);
      }
    }
  }
  std::vector<AmplitudeMatrix> out;
  out.reserve(nch);
  for (auto& plane : planes) out.emplace_back(rows, cols, depth, std::move(plane));
  return out;
}

RasterImage from_channels(std::span<const AmplitudeMatrix> channels,
                          ColorSpace space, std::uint32_t maxval) {
  const std::size_t expected = space == ColorSpace::Gray ? 1 : 3;
  if (channels.size() != expected) {
    throw Error(Errc::ColorSpaceMismatch,
                std::to_string(channels.size()) + " channels for a " +
                    (space == ColorSpace::Gray ? "gray" : "color") + " image");
  }
  const std::size_t rows = channels[0].rows();
  const std::size_t cols = channels[0].cols();
  for (const auto& ch : channels) {
    if (ch.rows() != rows || ch.cols() != cols) {
      throw Error(Errc::DimensionMismatch, "channel dimensions differ");
    }
  }
  const unsigned depth = static_cast<unsigned>(std::bit_width(maxval));
  std::vector<std::uint32_t> samples;
  samples.reserve(rows * cols * expected);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (space == ColorSpace::Yuv) {
        const Rgb rgb = yuv_to_rgb(
            {channels[0].at(r, c), channels[1].at(r, c), channels[2].at(r, c)},
            depth);
        samples.push_back(std::min(rgb.r, maxval));
        samples.push_back(std::min(rgb.g, maxval));
        samples.push_back(std::min(rgb.b, maxval));
      } else {
        for (const auto& ch : channels) {
          samples.push_back(std::min(ch.at(r, c), maxval));
        }
      }
    }
  }
  return {cols, rows, static_cast<unsigned>(expected), maxval,
          std::move(samples)};
}

PaddingRecord padding_for(std::size_t rows, std::size_t cols) {
  return {rows, cols, std::bit_ceil(rows), std::bit_ceil(cols)};
}

std::pair<AmplitudeMatrix, PaddingRecord> pad_to_pow2(
    const AmplitudeMatrix& amplitudes) {
  const PaddingRecord record = padding_for(amplitudes.rows(), amplitudes.cols());
  if (record.rows == record.original_rows &&
      record.cols == record.original_cols) {
    return {amplitudes, record};
  }
  std::vector<std::uint32_t> values(record.padded_pixels(), 0);
  for (std::size_t r = 0; r < amplitudes.rows(); ++r) {
    for (std::size_t c = 0; c < amplitudes.cols(); ++c) {
      values[r * record.cols + c] = amplitudes.at(r, c);
    }
  }
  return {AmplitudeMatrix(record.rows, record.cols, amplitudes.bit_depth(),
                          std::move(values)),
          record};
}

AmplitudeMatrix crop(const AmplitudeMatrix& padded, const PaddingRecord& record) {
  if (padded.rows() != record.rows || padded.cols() != record.cols ||
      record.original_rows > record.rows || record.original_cols > record.cols ||
      record.original_rows == 0 || record.original_cols == 0) {
    throw Error(Errc::DimensionMismatch, "padding record does not match matrix");
  }
  std::vector<std::uint32_t> values;
  values.reserve(record.original_pixels());
  for (std::size_t r = 0; r < record.original_rows; ++r) {
    for (std::size_t c = 0; c < record.original_cols; ++c) {
      values.push_back(padded.at(r, c));
    }
  }
  return {record.original_rows, record.original_cols, padded.bit_depth(),
          std::move(values)};
}

}  // namespace qir
