#pragma once

// One-hot qubit registers: row kets, column bras and the two-dimensional
// location states formed by their outer product.
//
// States are held as (dimension, index) pairs. The dense column/row vectors
// they stand for are only ever materialised by the dense oracle.

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace qir {

/// Number of qubits addressing `dimension` basis states. A dimension of one
/// still occupies a single qubit so that no register is zero bits wide.
/// Throws NonPowerOfTwoDims if `dimension` is not a power of two.
unsigned register_width(std::uint64_t dimension);

/// A fixed-width bit string, most significant bit first. Widths 1..64.
class QubitString {
 public:
  QubitString(std::uint64_t value, unsigned width);

  /// Parses a string of '0'/'1' characters.
  static QubitString from_bits(std::string_view bits);

  std::uint64_t value() const noexcept { return value_; }
  unsigned width() const noexcept { return width_; }

  /// Bit `i` counted from the most significant end.
  bool bit(unsigned i) const;

  std::string to_string() const;

  /// Concatenation; `*this` supplies the high bits.
  QubitString operator+(const QubitString& low) const;

  friend bool operator==(const QubitString&, const QubitString&) = default;
  friend auto operator<=>(const QubitString&, const QubitString&) = default;

 private:
  std::uint64_t value_;
  unsigned width_;
};

struct KetTag {};
struct BraTag {};

/// Computational basis state of a 2^k-dimensional register. `Tag` keeps
/// column kets and row bras apart at the type level.
template <class Tag>
class BasisState {
 public:
  BasisState(std::uint64_t dimension, std::uint64_t index);

  std::uint64_t dimension() const noexcept { return dimension_; }
  std::uint64_t index() const noexcept { return index_; }
  unsigned width() const { return register_width(dimension_); }
  QubitString code() const { return {index_, width()}; }

  friend bool operator==(const BasisState&, const BasisState&) = default;

 private:
  std::uint64_t dimension_;
  std::uint64_t index_;
};

using BasisKet = BasisState<KetTag>;
using BasisBra = BasisState<BraTag>;

extern template class BasisState<KetTag>;
extern template class BasisState<BraTag>;

/// The M x N matrix with a single 1 at (row, col); row and col are 1-based.
class LocationState {
 public:
  LocationState(std::uint64_t rows, std::uint64_t cols, std::uint64_t row,
                std::uint64_t col);

  std::uint64_t rows() const noexcept { return rows_; }
  std::uint64_t cols() const noexcept { return cols_; }
  std::uint64_t row() const noexcept { return row_; }
  std::uint64_t col() const noexcept { return col_; }

  BasisKet ket() const { return {rows_, row_ - 1}; }
  BasisBra bra() const { return {cols_, col_ - 1}; }

  friend bool operator==(const LocationState&, const LocationState&) = default;

 private:
  std::uint64_t rows_;
  std::uint64_t cols_;
  std::uint64_t row_;
  std::uint64_t col_;
};

/// Ket for 1-based row `row` of a register with `rows` basis states.
BasisKet ket_from_row(std::uint64_t row, std::uint64_t rows);
/// Bra for 1-based column `col` of a register with `cols` basis states.
BasisBra bra_from_col(std::uint64_t col, std::uint64_t cols);

/// Kronecker product of two basis states; `a` supplies the high-order qubits.
template <class Tag>
BasisState<Tag> tensor(const BasisState<Tag>& a, const BasisState<Tag>& b);

LocationState outer(const BasisKet& ket, const BasisBra& bra);

/// <bra|ket>: 1 when both select the same basis vector, else 0.
int inner(const BasisBra& bra, const BasisKet& ket);

/// Row register bits followed by column register bits.
QubitString location_code(const LocationState& location);

/// Inverse of location_code for an M x N grid.
LocationState location_from_code(const QubitString& code, std::uint64_t rows,
                                 std::uint64_t cols);

}  // namespace qir
