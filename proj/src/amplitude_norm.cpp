#include "qir/amplitude_norm.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qir/error.hpp"

namespace qir {

namespace {

void check_shape(std::size_t rows, std::size_t cols, std::size_t size,
                 const char* what) {
  if (rows == 0 || cols == 0) {
    throw Error(Errc::DimensionMismatch,
                std::string(what) + " must have at least one row and column");
  }
  if (rows > std::numeric_limits<std::size_t>::max() / cols ||
      rows * cols != size) {
    throw Error(Errc::DimensionMismatch,
                std::string(what) + " holds " + std::to_string(size) +
                    " values for a " + std::to_string(rows) + "x" +
                    std::to_string(cols) + " grid");
  }
}

}  // namespace

AmplitudeMatrix::AmplitudeMatrix(std::size_t rows, std::size_t cols,
                                 unsigned bit_depth,
                                 std::vector<std::uint32_t> values)
    : rows_(rows), cols_(cols), bit_depth_(bit_depth),
      values_(std::move(values)) {
  check_shape(rows_, cols_, values_.size(), "amplitude matrix");
  if (bit_depth_ < 1 || bit_depth_ > 32) {
    throw Error(Errc::OutOfRange,
                "bit depth must be in [1, 32], got " + std::to_string(bit_depth));
  }
  if (bit_depth_ < 32) {
    const std::uint32_t limit = std::uint32_t{1} << bit_depth_;
    for (std::uint32_t v : values_) {
      if (v >= limit) {
        throw Error(Errc::RegisterOverflow,
                    "sample " + std::to_string(v) + " exceeds bit depth " +
                        std::to_string(bit_depth_));
      }
    }
  }
}

AmplitudeMatrix AmplitudeMatrix::zeros(std::size_t rows, std::size_t cols,
                                       unsigned bit_depth) {
  return {rows, cols, bit_depth, std::vector<std::uint32_t>(rows * cols, 0)};
}

std::uint64_t AmplitudeMatrix::total() const {
  std::uint64_t sum = 0;
  for (std::uint32_t v : values_) {
    if (sum > std::numeric_limits<std::uint64_t>::max() - v) {
      throw Error(Errc::OutOfRange, "amplitude sum overflows 64 bits");
    }
    sum += v;
  }
  return sum;
}

NormalizedAmplitudeMatrix::NormalizedAmplitudeMatrix(std::size_t rows,
                                                     std::size_t cols,
                                                     std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  check_shape(rows_, cols_, values_.size(), "normalized matrix");
  for (double v : values_) {
    if (!(v >= 0.0)) {
      throw Error(Errc::OutOfRange, "normalized amplitudes must be real and >= 0");
    }
  }
}

double NormalizedAmplitudeMatrix::squared_norm() const {
  // Neumaier summation
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values_) {
    const double term = v * v;
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      carry += (sum - t) + term;
    } else {
      carry += (term - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

NumeratorField::NumeratorField(std::size_t rows, std::size_t cols,
                               std::vector<std::uint32_t> registers)
    : rows_(rows), cols_(cols), registers_(std::move(registers)) {
  check_shape(rows_, cols_, registers_.size(), "numerator field");
}

double NumeratorField::numerator(std::size_t row, std::size_t col) const {
  return std::sqrt(static_cast<double>(register_at(row, col)));
}

DenominatorKey::DenominatorKey(std::uint64_t total) : total_(total) {
  if (total == 0) {
    throw Error(Errc::AllZeroImage, "denominator key total must be >= 1");
  }
}

double DenominatorKey::alpha_d() const {
  return std::sqrt(static_cast<double>(total_));
}

std::uint64_t DenominatorKey::scale_for(std::uint64_t register_sum) const {
  if (register_sum == 0 || total_ % register_sum != 0) {
    throw Error(Errc::KeyMismatch,
                "key total " + std::to_string(total_) +
                    " is not a positive multiple of register sum " +
                    std::to_string(register_sum));
  }
  return total_ / register_sum;
}

NormalizedAmplitudeMatrix normalize(const AmplitudeMatrix& amplitudes) {
  const std::uint64_t total = amplitudes.total();
  if (total == 0) {
    throw Error(Errc::AllZeroImage, "cannot normalize an all-zero image");
  }
  const double denom = static_cast<double>(total);
  std::vector<double> alpha;
  alpha.reserve(amplitudes.values().size());
  for (std::uint32_t v : amplitudes.values()) {
    alpha.push_back(std::sqrt(static_cast<double>(v) / denom));
  }
  return {amplitudes.rows(), amplitudes.cols(), std::move(alpha)};
}

std::uint64_t nonzero_gcd(std::span<const std::uint32_t> values) {
  std::uint64_t g = 0;
  for (std::uint32_t v : values) {
    if (v != 0) {
      g = std::gcd(g, std::uint64_t{v});
      if (g == 1) break;
    }
  }
  return g;
}

SplitResult split(const AmplitudeMatrix& amplitudes, EncodingMode mode) {
  const std::uint64_t total = amplitudes.total();
  if (total == 0) {
    throw Error(Errc::AllZeroImage, "cannot split an all-zero image");
  }
  std::uint64_t scale = 1;
  if (mode == EncodingMode::Keyed) {
    scale = nonzero_gcd(amplitudes.values());
  }
  std::vector<std::uint32_t> registers(amplitudes.values().begin(),
                                       amplitudes.values().end());
  if (scale != 1) {
    for (auto& r : registers) {
      r = static_cast<std::uint32_t>(r / scale);
    }
  }
  return {NumeratorField(amplitudes.rows(), amplitudes.cols(),
                         std::move(registers)),
          DenominatorKey(total), scale};
}

unsigned qubit_budget(std::uint64_t value) {
  if (value <= 1) return 1;
  return static_cast<unsigned>(std::bit_width(value - 1));
}

unsigned storage_width(std::uint64_t value) {
  return value == 0 ? 1u : static_cast<unsigned>(std::bit_width(value));
}

QubitString encode_value_register(std::uint64_t value, unsigned width) {
  return {value, width};
}

std::uint64_t decode_value_register(const QubitString& bits) {
  return bits.value();
}

}  // namespace qir
