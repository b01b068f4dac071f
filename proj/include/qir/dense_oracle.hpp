#pragma once

// Brute-force reference for the sparse representation. Every location state
// is expanded into a dense ket and bra by repeated single-qubit Kronecker
// products, multiplied out to a full M x N matrix, scaled and accumulated.
// Nothing here shares code with the fast encode/decode path beyond the
// QuantumImage it reads.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qir/amplitude_norm.hpp"
#include "qir/quantum_image.hpp"

namespace qir::oracle {

/// Largest row or column count the oracle accepts.
inline constexpr std::size_t kMaxDimension = 64;

class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& at(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const {
    return values_[r * cols_ + c];
  }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

/// Dense column vector of the ket for 1-based row `row` of `rows`.
std::vector<double> dense_ket(std::size_t row, std::size_t rows);
/// Dense row vector of the bra for 1-based column `col` of `cols`.
std::vector<double> dense_bra(std::size_t col, std::size_t cols);
/// Outer product of a dense ket and bra.
DenseMatrix dense_location(std::span<const double> ket,
                           std::span<const double> bra);

enum class View { Register, Normalized };

/// Sum over all terms of coefficient * |row><col|. The register view uses
/// the raw registers; the normalized view uses sqrt(register / register sum)
/// and requires a key consistent with the terms.
DenseMatrix render_dense(const QuantumImage& image,
                         const std::optional<DenominatorKey>& key, View view);

struct EquivalenceReport {
  bool pass = false;
  double max_deviation = 0.0;
  std::size_t worst_row = 0;
  std::size_t worst_col = 0;
};

/// Integer views must agree exactly.
EquivalenceReport assert_equiv(const AmplitudeMatrix& fast,
                               const DenseMatrix& oracle);
/// Normalized views must agree within kRealTolerance.
EquivalenceReport assert_equiv(const NormalizedAmplitudeMatrix& fast,
                               const DenseMatrix& oracle);

struct VerifyReport {
  EquivalenceReport reconstruction;
  EquivalenceReport normalized;
  bool pass() const { return reconstruction.pass && normalized.pass; }
};

/// Encodes one padded channel, then checks the fast decode and normalized
/// view against the dense render. `inject_fault` corrupts one sample of the
/// fast-path reconstruction before comparison.
VerifyReport verify_channel(const AmplitudeMatrix& channel, EncodingMode mode,
                            bool inject_fault = false);

}  // namespace qir::oracle
