#pragma once

// Superposition form of one image channel: every pixel location state
// weighted by its numerator register, plus the amplitude -> locations
// inverted index that is what actually gets stored.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qir/amplitude_norm.hpp"
#include "qir/basis_states.hpp"

namespace qir {

/// One term per pixel of a power-of-two grid, stored row-major. Immutable.
///
/// When a key is attached, the registers times some positive integer scale
/// must sum to the key total.
class QuantumImage {
 public:
  QuantumImage(std::size_t rows, std::size_t cols, unsigned bit_depth,
               std::vector<std::uint32_t> registers,
               std::optional<DenominatorKey> key, EncodingMode mode);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  /// Bit depth of the source channel.
  unsigned bit_depth() const noexcept { return bit_depth_; }
  EncodingMode mode() const noexcept { return mode_; }
  const std::optional<DenominatorKey>& key() const noexcept { return key_; }

  unsigned row_width() const { return register_width(rows_); }
  unsigned col_width() const { return register_width(cols_); }
  unsigned code_width() const { return row_width() + col_width(); }

  std::size_t term_count() const noexcept { return registers_.size(); }
  std::span<const std::uint32_t> registers() const noexcept {
    return registers_;
  }
  /// 0-based row and column.
  std::uint32_t register_at(std::size_t row, std::size_t col) const {
    return registers_[row * cols_ + col];
  }
  LocationState location(std::size_t row, std::size_t col) const {
    return {rows_, cols_, row + 1, col + 1};
  }
  std::uint64_t register_sum() const;

  QuantumImage without_key() const;

  friend bool operator==(const QuantumImage&, const QuantumImage&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  unsigned bit_depth_;
  std::vector<std::uint32_t> registers_;
  std::optional<DenominatorKey> key_;
  EncodingMode mode_;
};

/// All location codes sharing one register value, ascending.
struct AmplitudeGroup {
  std::uint32_t value;
  std::vector<std::uint64_t> codes;

  friend bool operator==(const AmplitudeGroup&, const AmplitudeGroup&) = default;
};

/// Partition of every location code of an M x N grid by register value.
/// Groups are ordered by ascending value; codes within a group ascend.
class AmplitudeLocationIndex {
 public:
  /// Validates the partition; throws MultiplicityMismatch if the groups do
  /// not cover each location exactly once, MalformedContainer on ordering
  /// or range violations.
  AmplitudeLocationIndex(std::size_t rows, std::size_t cols,
                         std::vector<AmplitudeGroup> groups);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  unsigned row_width() const { return register_width(rows_); }
  unsigned col_width() const { return register_width(cols_); }
  unsigned code_width() const { return row_width() + col_width(); }

  const std::vector<AmplitudeGroup>& groups() const noexcept { return groups_; }

  QubitString code_string(std::uint64_t code) const {
    return {code, code_width()};
  }
  std::uint32_t max_value() const;
  std::size_t location_count() const;

  friend bool operator==(const AmplitudeLocationIndex&,
                         const AmplitudeLocationIndex&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<AmplitudeGroup> groups_;
};

QuantumImage encode(const AmplitudeMatrix& amplitudes,
                    EncodingMode mode = EncodingMode::Keyed);

AmplitudeLocationIndex build_index(const QuantumImage& image);

/// Rebuilds the per-pixel terms from an index.
QuantumImage from_index(const AmplitudeLocationIndex& index, unsigned bit_depth,
                        std::optional<DenominatorKey> key = std::nullopt,
                        EncodingMode mode = EncodingMode::Keyed);

/// Exact reconstruction. Throws KeyMismatch when the key total is not a
/// positive multiple of the register sum, or the scaled samples do not fit
/// the image's bit depth.
AmplitudeMatrix decode(const QuantumImage& image, const DenominatorKey& key);

/// Reconstruction without the key: the gcd-reduced representative. Only
/// correct up to an unknown positive scale.
AmplitudeMatrix decode_unkeyed(const QuantumImage& image);

NormalizedAmplitudeMatrix normalized_view(const QuantumImage& image,
                                          const DenominatorKey& key);

}  // namespace qir
