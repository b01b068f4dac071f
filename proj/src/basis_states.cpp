#include "qir/basis_states.hpp"

#include <bit>

#include "qir/error.hpp"

namespace qir {

unsigned register_width(std::uint64_t dimension) {
  if (!std::has_single_bit(dimension)) {
    throw Error(Errc::NonPowerOfTwoDims,
                "register dimension " + std::to_string(dimension) +
                    " is not a power of two");
  }
  const auto width = static_cast<unsigned>(std::countr_zero(dimension));
  return width == 0 ? 1u : width;
}

QubitString::QubitString(std::uint64_t value, unsigned width)
    : value_(value), width_(width) {
  if (width == 0 || width > 64) {
    throw Error(Errc::OutOfRange,
                "qubit string width must be in [1, 64], got " +
                    std::to_string(width));
  }
  if (width < 64 && (value >> width) != 0) {
    throw Error(Errc::RegisterOverflow,
                "value " + std::to_string(value) + " does not fit in " +
                    std::to_string(width) + " qubits");
  }
}

QubitString QubitString::from_bits(std::string_view bits) {
  if (bits.empty() || bits.size() > 64) {
    throw Error(Errc::OutOfRange, "qubit string must hold 1 to 64 bits");
  }
  std::uint64_t value = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw Error(Errc::OutOfRange,
                  std::string("invalid qubit character '") + c + "'");
    }
    value = (value << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return {value, static_cast<unsigned>(bits.size())};
}

bool QubitString::bit(unsigned i) const {
  if (i >= width_) {
    throw Error(Errc::OutOfRange, "bit index past end of qubit string");
  }
  return ((value_ >> (width_ - 1 - i)) & 1u) != 0;
}

std::string QubitString::to_string() const {
  std::string out(width_, '0');
  for (unsigned i = 0; i < width_; ++i) {
    if (bit(i)) out[i] = '1';
  }
  return out;
}

QubitString QubitString::operator+(const QubitString& low) const {
  const unsigned width = width_ + low.width_;
  if (width > 64) {
    throw Error(Errc::OutOfRange, "concatenated qubit string exceeds 64 bits");
  }
  return {(value_ << low.width_) | low.value_, width};
}

template <class Tag>
BasisState<Tag>::BasisState(std::uint64_t dimension, std::uint64_t index)
    : dimension_(dimension), index_(index) {
  register_width(dimension);  // validates power of two
  if (index >= dimension) {
    throw Error(Errc::OutOfRange, "basis index " + std::to_string(index) +
                                      " outside dimension " +
                                      std::to_string(dimension));
  }
}

template class BasisState<KetTag>;
template class BasisState<BraTag>;

LocationState::LocationState(std::uint64_t rows, std::uint64_t cols,
                             std::uint64_t row, std::uint64_t col)
    : rows_(rows), cols_(cols), row_(row), col_(col) {
  register_width(rows);
  register_width(cols);
  if (row < 1 || row > rows || col < 1 || col > cols) {
    throw Error(Errc::OutOfRange, "location (" + std::to_string(row) + ", " +
                                      std::to_string(col) + ") outside " +
                                      std::to_string(rows) + "x" +
                                      std::to_string(cols) + " grid");
  }
}

BasisKet ket_from_row(std::uint64_t row, std::uint64_t rows) {
  if (row < 1 || row > rows) {
    register_width(rows);
    throw Error(Errc::OutOfRange, "row " + std::to_string(row) +
                                      " outside [1, " + std::to_string(rows) +
                                      "]");
  }
  return {rows, row - 1};
}

BasisBra bra_from_col(std::uint64_t col, std::uint64_t cols) {
  if (col < 1 || col > cols) {
    register_width(cols);
    throw Error(Errc::OutOfRange, "column " + std::to_string(col) +
                                      " outside [1, " + std::to_string(cols) +
                                      "]");
  }
  return {cols, col - 1};
}

template <class Tag>
BasisState<Tag> tensor(const BasisState<Tag>& a, const BasisState<Tag>& b) {
  if (std::countr_zero(a.dimension()) + std::countr_zero(b.dimension()) > 63) {
    throw Error(Errc::OutOfRange, "tensor product dimension overflows");
  }
  return {a.dimension() * b.dimension(),
          a.index() * b.dimension() + b.index()};
}

template BasisKet tensor(const BasisKet&, const BasisKet&);
template BasisBra tensor(const BasisBra&, const BasisBra&);

LocationState outer(const BasisKet& ket, const BasisBra& bra) {
  return {ket.dimension(), bra.dimension(), ket.index() + 1, bra.index() + 1};
}

int inner(const BasisBra& bra, const BasisKet& ket) {
  if (bra.dimension() != ket.dimension()) {
    throw Error(Errc::DimensionMismatch,
                "inner product of " + std::to_string(bra.dimension()) +
                    "-dim bra with " + std::to_string(ket.dimension()) +
                    "-dim ket");
  }
  return bra.index() == ket.index() ? 1 : 0;
}

QubitString location_code(const LocationState& location) {
  return location.ket().code() + location.bra().code();
}

LocationState location_from_code(const QubitString& code, std::uint64_t rows,
                                 std::uint64_t cols) {
  const unsigned row_width = register_width(rows);
  const unsigned col_width = register_width(cols);
  if (code.width() != row_width + col_width) {
    throw Error(Errc::DimensionMismatch,
                "location code of width " + std::to_string(code.width()) +
                    " for a grid needing " +
                    std::to_string(row_width + col_width));
  }
  const std::uint64_t col_mask =
      col_width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << col_width) - 1;
  const std::uint64_t col = code.value() & col_mask;
  const std::uint64_t row = col_width == 64 ? 0 : code.value() >> col_width;
  return {rows, cols, row + 1, col + 1};
}

}  // namespace qir
