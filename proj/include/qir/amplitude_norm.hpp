#pragma once

// Unit-norm amplitudes for an integer image channel, and the split of each
// normalized amplitude into a per-pixel numerator register and a global
// denominator key.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qir/basis_states.hpp"

namespace qir {

/// Absolute tolerance used for every real-valued comparison.
inline constexpr double kRealTolerance = 1e-12;

/// Row-major M x N matrix of nonnegative integer samples, each < 2^bit_depth.
class AmplitudeMatrix {
 public:
  AmplitudeMatrix(std::size_t rows, std::size_t cols, unsigned bit_depth,
                  std::vector<std::uint32_t> values);

  static AmplitudeMatrix zeros(std::size_t rows, std::size_t cols,
                               unsigned bit_depth);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  unsigned bit_depth() const noexcept { return bit_depth_; }
  std::span<const std::uint32_t> values() const noexcept { return values_; }

  std::uint32_t at(std::size_t row, std::size_t col) const {
    return values_[row * cols_ + col];
  }

  /// Sum of all samples. Throws OutOfRange on 64-bit overflow.
  std::uint64_t total() const;

  friend bool operator==(const AmplitudeMatrix&,
                         const AmplitudeMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  unsigned bit_depth_;
  std::vector<std::uint32_t> values_;
};

/// Real coefficients whose squares sum to one.
class NormalizedAmplitudeMatrix {
 public:
  NormalizedAmplitudeMatrix(std::size_t rows, std::size_t cols,
                            std::vector<double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const double> values() const noexcept { return values_; }
  double at(std::size_t row, std::size_t col) const {
    return values_[row * cols_ + col];
  }

  double squared_norm() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

/// Integer numerator registers. The real numerator of a pixel is the square
/// root of its register.
class NumeratorField {
 public:
  NumeratorField(std::size_t rows, std::size_t cols,
                 std::vector<std::uint32_t> registers);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const std::uint32_t> registers() const noexcept {
    return registers_;
  }
  std::uint32_t register_at(std::size_t row, std::size_t col) const {
    return registers_[row * cols_ + col];
  }
  double numerator(std::size_t row, std::size_t col) const;

  friend bool operator==(const NumeratorField&,
                         const NumeratorField&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> registers_;
};

/// Sum of the source amplitudes. Its square root is the shared denominator
/// of every normalized amplitude.
class DenominatorKey {
 public:
  explicit DenominatorKey(std::uint64_t total);

  std::uint64_t total() const noexcept { return total_; }
  double alpha_d() const;

  /// The integer g with g * register_sum == total. Throws KeyMismatch when
  /// none exists.
  std::uint64_t scale_for(std::uint64_t register_sum) const;

  friend bool operator==(const DenominatorKey&,
                         const DenominatorKey&) = default;

 private:
  std::uint64_t total_;
};

enum class EncodingMode {
  /// Registers hold the raw amplitudes.
  Plain,
  /// Registers hold amplitudes divided by the gcd of the nonzero amplitudes.
  Keyed,
};

struct SplitResult {
  NumeratorField numerators;
  DenominatorKey key;
  /// Divisor applied to every amplitude (1 in plain mode).
  std::uint64_t scale;
};

NormalizedAmplitudeMatrix normalize(const AmplitudeMatrix& amplitudes);

SplitResult split(const AmplitudeMatrix& amplitudes,
                  EncodingMode mode = EncodingMode::Keyed);

/// gcd of the nonzero values; 0 when every value is zero.
std::uint64_t nonzero_gcd(std::span<const std::uint32_t> values);

/// ceil(log2 v) qubits, with a floor of one qubit for v in {0, 1}.
unsigned qubit_budget(std::uint64_t value);

/// Smallest width whose registers can hold `value` (bit length, minimum 1).
unsigned storage_width(std::uint64_t value);

QubitString encode_value_register(std::uint64_t value, unsigned width);
std::uint64_t decode_value_register(const QubitString& bits);

}  // namespace qir
