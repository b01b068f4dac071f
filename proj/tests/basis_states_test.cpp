#include "qir/basis_states.hpp"

#include <gtest/gtest.h>

#include <array>
#include <set>
#include <vector>

#include "qir/error.hpp"

using namespace qir;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected qir::Error";
  return Errc::Io;
}

// Independent dense expansion: explicit one-hot vectors and a plain dot
// product, no index arithmetic shared with the library.
std::vector<int> one_hot(std::uint64_t dim, std::uint64_t index) {
  std::vector<int> v(dim, 0);
  v[index] = 1;
  return v;
}

}  // namespace

TEST(BasisStates, KetFromRowUsesRowMinusOne) {
  const BasisKet first = ket_from_row(1, 4);
  EXPECT_EQ(first.dimension(), 4u);
  EXPECT_EQ(first.index(), 0u);
  EXPECT_EQ(first.code().to_string(), "00");

  const BasisKet third = ket_from_row(3, 4);
  EXPECT_EQ(third.index(), 2u);
  EXPECT_EQ(third.code().to_string(), "10");

  const BasisKet single = ket_from_row(2, 2);
  EXPECT_EQ(single.dimension(), 2u);
  EXPECT_EQ(single.index(), 1u);
  EXPECT_EQ(single.code().to_string(), "1");
}

TEST(BasisStates, BraFromColUsesColMinusOne) {
  EXPECT_EQ(bra_from_col(2, 4).code().to_string(), "01");
  EXPECT_EQ(bra_from_col(4, 4).code().to_string(), "11");
  const BasisBra b = bra_from_col(1, 2);
  EXPECT_EQ(b.dimension(), 2u);
  EXPECT_EQ(b.index(), 0u);
}

TEST(BasisStates, RejectsBadRegisters) {
  EXPECT_EQ(code_of([] { ket_from_row(1, 3); }), Errc::NonPowerOfTwoDims);
  EXPECT_EQ(code_of([] { ket_from_row(0, 4); }), Errc::OutOfRange);
  EXPECT_EQ(code_of([] { ket_from_row(5, 4); }), Errc::OutOfRange);
  EXPECT_EQ(code_of([] { bra_from_col(1, 6); }), Errc::NonPowerOfTwoDims);
  EXPECT_EQ(code_of([] { bra_from_col(9, 8); }), Errc::OutOfRange);
  EXPECT_EQ(code_of([] { BasisKet(0, 0); }), Errc::NonPowerOfTwoDims);
}

TEST(BasisStates, DimensionOneUsesOneQubit) {
  EXPECT_EQ(register_width(1), 1u);
  EXPECT_EQ(register_width(2), 1u);
  EXPECT_EQ(register_width(1024), 10u);
  EXPECT_EQ(ket_from_row(1, 1).code().to_string(), "0");
}

TEST(BasisStates, TensorConcatenatesQubits) {
  const BasisKet zero(2, 0), one(2, 1);
  const BasisKet zo = tensor(zero, one);
  EXPECT_EQ(zo.dimension(), 4u);
  EXPECT_EQ(zo.index(), 1u);
  EXPECT_EQ(zo.code().to_string(), "01");
  EXPECT_EQ(tensor(one, one).index(), 3u);
  EXPECT_EQ(tensor(zero, zero).index(), 0u);

  const BasisBra b = tensor(BasisBra(2, 1), BasisBra(4, 2));
  EXPECT_EQ(b.dimension(), 8u);
  EXPECT_EQ(b.code().to_string(), "110");
}

TEST(BasisStates, TensorIsAssociative) {
  for (std::uint64_t da : {1u, 2u, 4u}) {
    for (std::uint64_t db : {2u, 8u}) {
      for (std::uint64_t dc : {1u, 2u, 4u}) {
        for (std::uint64_t a = 0; a < da; ++a) {
          for (std::uint64_t b = 0; b < db; ++b) {
            for (std::uint64_t c = 0; c < dc; ++c) {
              const BasisKet x(da, a), y(db, b), z(dc, c);
              EXPECT_EQ(tensor(tensor(x, y), z), tensor(x, tensor(y, z)));
            }
          }
        }
      }
    }
  }
}

TEST(BasisStates, OuterBuildsLocation) {
  const LocationState l11 = outer(BasisKet(4, 0), BasisBra(4, 0));
  EXPECT_EQ(l11, LocationState(4, 4, 1, 1));
  const LocationState l43 =
      outer(tensor(BasisKet(2, 1), BasisKet(2, 1)),
            tensor(BasisBra(2, 1), BasisBra(2, 0)));
  EXPECT_EQ(l43, LocationState(4, 4, 4, 3));
  EXPECT_EQ(outer(BasisKet(2, 1), BasisBra(2, 0)), LocationState(2, 2, 2, 1));
}

TEST(BasisStates, InnerProduct) {
  EXPECT_EQ(inner(BasisBra(2, 0), BasisKet(2, 0)), 1);
  EXPECT_EQ(inner(BasisBra(2, 0), BasisKet(2, 1)), 0);
  EXPECT_EQ(inner(BasisBra(4, 1), BasisKet(4, 1)), 1);
  EXPECT_EQ(code_of([] { inner(BasisBra(2, 0), BasisKet(4, 0)); }),
            Errc::DimensionMismatch);
}

TEST(BasisStates, InnerMatchesDenseDotProduct) {
  for (std::uint64_t dim : {1u, 2u, 4u, 8u}) {
    for (std::uint64_t i = 0; i < dim; ++i) {
      for (std::uint64_t j = 0; j < dim; ++j) {
        const auto bra = one_hot(dim, i);
        const auto ket = one_hot(dim, j);
        int dot = 0;
        for (std::uint64_t k = 0; k < dim; ++k) dot += bra[k] * ket[k];
        EXPECT_EQ(inner(BasisBra(dim, i), BasisKet(dim, j)), dot);
      }
    }
  }
}

TEST(BasisStates, LocationCodes) {
  EXPECT_EQ(location_code(LocationState(4, 4, 1, 2)).to_string(), "0001");
  EXPECT_EQ(location_code(LocationState(4, 4, 4, 3)).to_string(), "1110");
  EXPECT_EQ(location_code(LocationState(2, 2, 1, 1)).to_string(), "00");
  EXPECT_EQ(location_code(LocationState(1, 4, 1, 3)).to_string(), "010");
  EXPECT_EQ(location_code(LocationState(4, 1, 3, 1)).to_string(), "100");
}

TEST(BasisStates, LocationCodeIsABijection) {
  const std::array<std::uint64_t, 5> dims{1, 2, 4, 8, 16};
  for (auto rows : dims) {
    for (auto cols : dims) {
      std::set<std::uint64_t> codes;
      for (std::uint64_t p = 1; p <= rows; ++p) {
        for (std::uint64_t q = 1; q <= cols; ++q) {
          const LocationState loc(rows, cols, p, q);
          const QubitString code = location_code(loc);
          EXPECT_EQ(code.width(), register_width(rows) + register_width(cols));
          EXPECT_TRUE(codes.insert(code.value()).second);
          EXPECT_EQ(location_from_code(code, rows, cols), loc);
        }
      }
      EXPECT_EQ(codes.size(), rows * cols);
    }
  }
}

TEST(BasisStates, LocationFromCodeRejectsForeignCodes) {
  EXPECT_EQ(code_of([] { location_from_code(QubitString(0, 3), 4, 4); }),
            Errc::DimensionMismatch);
  // M = 1 keeps one row qubit, so a leading 1 names no row.
  EXPECT_EQ(code_of([] { location_from_code(QubitString::from_bits("110"), 1, 4); }),
            Errc::OutOfRange);
}

TEST(QubitString, ParsingAndBits) {
  const QubitString s = QubitString::from_bits("1011");
  EXPECT_EQ(s.value(), 11u);
  EXPECT_EQ(s.width(), 4u);
  EXPECT_TRUE(s.bit(0));
  EXPECT_FALSE(s.bit(1));
  EXPECT_EQ((QubitString(1, 2) + QubitString(0, 3)).to_string(), "01000");
  EXPECT_EQ(code_of([] { QubitString(4, 2); }), Errc::RegisterOverflow);
  EXPECT_EQ(code_of([] { QubitString(0, 0); }), Errc::OutOfRange);
  EXPECT_EQ(code_of([] { QubitString::from_bits("10x"); }), Errc::OutOfRange);
  EXPECT_EQ(code_of([] { QubitString::from_bits(""); }), Errc::OutOfRange);
}
