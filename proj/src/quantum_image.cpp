#include "qir/quantum_image.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "qir/error.hpp"

namespace qir {

namespace {

void require_power_of_two(std::size_t rows, std::size_t cols) {
  if (!std::has_single_bit(rows) || !std::has_single_bit(cols)) {
    throw Error(Errc::NonPowerOfTwoDims,
                std::to_string(rows) + "x" + std::to_string(cols) +
                    " is not a power-of-two grid; pad the image first");
  }
}

}  // namespace

QuantumImage::QuantumImage(std::size_t rows, std::size_t cols,
                           unsigned bit_depth,
                           std::vector<std::uint32_t> registers,
                           std::optional<DenominatorKey> key, EncodingMode mode)
    : rows_(rows), cols_(cols), bit_depth_(bit_depth),
      registers_(std::move(registers)), key_(key), mode_(mode) {
  require_power_of_two(rows_, cols_);
  if (registers_.size() != rows_ * cols_) {
    throw Error(Errc::DimensionMismatch,
                "quantum image needs one term per pixel");
  }
  if (bit_depth_ < 1 || bit_depth_ > 32) {
    throw Error(Errc::OutOfRange, "bit depth must be in [1, 32]");
  }
  if (key_) key_->scale_for(register_sum());
}

std::uint64_t QuantumImage::register_sum() const {
  std::uint64_t sum = 0;
  for (std::uint32_t r : registers_) sum += r;
  return sum;
}

QuantumImage QuantumImage::without_key() const {
  return {rows_, cols_, bit_depth_, registers_, std::nullopt, mode_};
}

AmplitudeLocationIndex::AmplitudeLocationIndex(
    std::size_t rows, std::size_t cols, std::vector<AmplitudeGroup> groups)
    : rows_(rows), cols_(cols), groups_(std::move(groups)) {
  require_power_of_two(rows_, cols_);
  const unsigned cw = col_width();
  std::vector<bool> seen(rows_ * cols_, false);
  std::size_t covered = 0;
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    const auto& group = groups_[g];
    if (group.codes.empty()) {
      throw Error(Errc::MalformedContainer, "empty amplitude group");
    }
    if (g > 0 && groups_[g - 1].value >= group.value) {
      throw Error(Errc::MalformedContainer,
                  "amplitude groups not in ascending value order");
    }
    for (std::size_t i = 0; i < group.codes.size(); ++i) {
      const std::uint64_t code = group.codes[i];
      if (i > 0 && group.codes[i - 1] >= code) {
        throw Error(Errc::MalformedContainer,
                    "location codes not strictly ascending within group");
      }
      const std::uint64_t row = code >> cw;
      const std::uint64_t col = code & ((std::uint64_t{1} << cw) - 1);
      if (row >= rows_ || col >= cols_) {
        throw Error(Errc::MalformedContainer,
                    "location code " + std::to_string(code) + " outside grid");
      }
      const std::size_t pixel = row * cols_ + col;
      if (seen[pixel]) {
        throw Error(Errc::MalformedContainer,
                    "location code " + std::to_string(code) +
                        " assigned to more than one amplitude");
      }
      seen[pixel] = true;
      ++covered;
    }
  }
  if (covered != rows_ * cols_) {
    throw Error(Errc::MultiplicityMismatch,
                "index covers " + std::to_string(covered) + " of " +
                    std::to_string(rows_ * cols_) + " locations");
  }
}

std::uint32_t AmplitudeLocationIndex::max_value() const {
  return groups_.empty() ? 0 : groups_.back().value;
}

std::size_t AmplitudeLocationIndex::location_count() const {
  std::size_t n = 0;
  for (const auto& g : groups_) n += g.codes.size();
  return n;
}

QuantumImage encode(const AmplitudeMatrix& amplitudes, EncodingMode mode) {
  require_power_of_two(amplitudes.rows(), amplitudes.cols());
  auto [numerators, key, scale] = split(amplitudes, mode);
  auto registers = numerators.registers();
  return {amplitudes.rows(),
          amplitudes.cols(),
          amplitudes.bit_depth(),
          std::vector<std::uint32_t>(registers.begin(), registers.end()),
          key,
          mode};
}

AmplitudeLocationIndex build_index(const QuantumImage& image) {
  const unsigned cw = image.col_width();
  std::map<std::uint32_t, std::vector<std::uint64_t>> by_value;
  for (std::size_t r = 0; r < image.rows(); ++r) {
    for (std::size_t c = 0; c < image.cols(); ++c) {
      // row-major traversal yields ascending codes
      by_value[image.register_at(r, c)].push_back(
          (std::uint64_t{r} << cw) | std::uint64_t{c});
    }
  }
  std::vector<AmplitudeGroup> groups;
  groups.reserve(by_value.size());
  for (auto& [value, codes] : by_value) {
    groups.push_back({value, std::move(codes)});
  }
  return {image.rows(), image.cols(), std::move(groups)};
}

QuantumImage from_index(const AmplitudeLocationIndex& index, unsigned bit_depth,
                        std::optional<DenominatorKey> key, EncodingMode mode) {
  const unsigned cw = index.col_width();
  const std::uint64_t col_mask = (std::uint64_t{1} << cw) - 1;
  std::vector<std::uint32_t> registers(index.rows() * index.cols(), 0);
  for (const auto& group : index.groups()) {
    for (std::uint64_t code : group.codes) {
      registers[(code >> cw) * index.cols() + (code & col_mask)] = group.value;
    }
  }
  return {index.rows(), index.cols(), bit_depth, std::move(registers), key,
          mode};
}

AmplitudeMatrix decode(const QuantumImage& image, const DenominatorKey& key) {
  const std::uint64_t scale = key.scale_for(image.register_sum());
  const std::uint64_t limit = image.bit_depth() >= 32
                                  ? (std::uint64_t{1} << 32)
                                  : (std::uint64_t{1} << image.bit_depth());
  std::vector<std::uint32_t> values;
  values.reserve(image.term_count());
  for (std::uint32_t r : image.registers()) {
    const std::uint64_t v = std::uint64_t{r} * scale;
    if (r != 0 && (v / r != scale || v >= limit)) {
      throw Error(Errc::KeyMismatch,
                  "key scale " + std::to_string(scale) +
                      " pushes samples past bit depth " +
                      std::to_string(image.bit_depth()));
    }
    values.push_back(static_cast<std::uint32_t>(v));
  }
  return {image.rows(), image.cols(), image.bit_depth(), std::move(values)};
}

AmplitudeMatrix decode_unkeyed(const QuantumImage& image) {
  const std::uint64_t g = nonzero_gcd(image.registers());
  std::vector<std::uint32_t> values(image.registers().begin(),
                                    image.registers().end());
  if (g > 1) {
    for (auto& v : values) v = static_cast<std::uint32_t>(v / g);
  }
  return {image.rows(), image.cols(), image.bit_depth(), std::move(values)};
}

NormalizedAmplitudeMatrix normalized_view(const QuantumImage& image,
                                          const DenominatorKey& key) {
  const std::uint64_t scale = key.scale_for(image.register_sum());
  const double total = static_cast<double>(key.total());
  std::vector<double> alpha;
  alpha.reserve(image.term_count());
  for (std::uint32_t r : image.registers()) {
    alpha.push_back(
        std::sqrt(static_cast<double>(std::uint64_t{r} * scale) / total));
  }
  return {image.rows(), image.cols(), std::move(alpha)};
}

}  // namespace qir
