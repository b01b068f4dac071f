#include "qir/dense_oracle.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "qir/error.hpp"

namespace qir::oracle {

namespace {

constexpr double kQubitZero[2] = {1.0, 0.0};
constexpr double kQubitOne[2] = {0.0, 1.0};

std::vector<double> kron(const std::vector<double>& a, const double (&b)[2]) {
  std::vector<double> out(a.size() * 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[2 * i] = a[i] * b[0];
    out[2 * i + 1] = a[i] * b[1];
  }
  return out;
}

// Builds the register one qubit at a time from the binary digits of
// `index`, most significant first. A one-dimensional register has no qubits.
std::vector<double> expand(std::size_t index, std::size_t dimension) {
  std::size_t qubits = 0;
  while ((std::size_t{1} << qubits) < dimension) ++qubits;
  if ((std::size_t{1} << qubits) != dimension || index >= dimension) {
    throw Error(Errc::NonPowerOfTwoDims,
                "dense register of dimension " + std::to_string(dimension));
  }
  std::vector<double> state{1.0};
  for (std::size_t k = qubits; k-- > 0;) {
    state = kron(state, ((index >> k) & 1u) ? kQubitOne : kQubitZero);
  }
  return state;
}

void check_size(std::size_t rows, std::size_t cols) {
  if (rows > kMaxDimension || cols > kMaxDimension) {
    throw Error(Errc::OracleTooLarge,
                "dense oracle is limited to " + std::to_string(kMaxDimension) +
                    "x" + std::to_string(kMaxDimension) + " images, got " +
                    std::to_string(rows) + "x" + std::to_string(cols));
  }
}

template <class Fast, class Get>
EquivalenceReport compare(const Fast& fast, const DenseMatrix& oracle,
                          double tolerance, Get get) {
  if (fast.rows() != oracle.rows() || fast.cols() != oracle.cols()) {
    throw Error(Errc::DimensionMismatch,
                "cannot compare " + std::to_string(fast.rows()) + "x" +
                    std::to_string(fast.cols()) + " against " +
                    std::to_string(oracle.rows()) + "x" +
                    std::to_string(oracle.cols()));
  }
  EquivalenceReport report;
  for (std::size_t r = 0; r < oracle.rows(); ++r) {
    for (std::size_t c = 0; c < oracle.cols(); ++c) {
      const double d = std::abs(get(fast, r, c) - oracle.at(r, c));
      if (d > report.max_deviation) {
        report.max_deviation = d;
        report.worst_row = r;
        report.worst_col = c;
      }
    }
  }
  report.pass = report.max_deviation <= tolerance;
  return report;
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

std::vector<double> dense_ket(std::size_t row, std::size_t rows) {
  if (row < 1) throw Error(Errc::OutOfRange, "rows are 1-based");
  return expand(row - 1, rows);
}

std::vector<double> dense_bra(std::size_t col, std::size_t cols) {
  if (col < 1) throw Error(Errc::OutOfRange, "columns are 1-based");
  return expand(col - 1, cols);
}

DenseMatrix dense_location(std::span<const double> ket,
                           std::span<const double> bra) {
  DenseMatrix out(ket.size(), bra.size());
  for (std::size_t i = 0; i < ket.size(); ++i) {
    for (std::size_t j = 0; j < bra.size(); ++j) {
      out.at(i, j) = ket[i] * bra[j];
    }
  }
  return out;
}

DenseMatrix render_dense(const QuantumImage& image,
                         const std::optional<DenominatorKey>& key, View view) {
  const std::size_t rows = image.rows();
  const std::size_t cols = image.cols();
  check_size(rows, cols);

  double norm = 1.0;
  if (view == View::Normalized) {
    if (!key) {
      throw Error(Errc::KeyMismatch, "normalized view requires a key");
    }
    std::uint64_t sum = 0;
    for (std::uint32_t r : image.registers()) sum += r;
    key->scale_for(sum);
    norm = std::sqrt(static_cast<double>(sum));
  }

  DenseMatrix out(rows, cols);
  for (std::size_t p = 1; p <= rows; ++p) {
    const auto ket = dense_ket(p, rows);
    for (std::size_t q = 1; q <= cols; ++q) {
      const auto bra = dense_bra(q, cols);
      const DenseMatrix location = dense_location(ket, bra);
      const double reg = static_cast<double>(image.register_at(p - 1, q - 1));
      const double coefficient =
          view == View::Register ? reg : std::sqrt(reg) / norm;
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
          out.at(i, j) += coefficient * location.at(i, j);
        }
      }
    }
  }
  return out;
}

EquivalenceReport assert_equiv(const AmplitudeMatrix& fast,
                               const DenseMatrix& oracle) {
  return compare(fast, oracle, 0.0, [](const AmplitudeMatrix& m, std::size_t r,
                                       std::size_t c) {
    return static_cast<double>(m.at(r, c));
  });
}

EquivalenceReport assert_equiv(const NormalizedAmplitudeMatrix& fast,
                               const DenseMatrix& oracle) {
  return compare(fast, oracle, kRealTolerance,
                 [](const NormalizedAmplitudeMatrix& m, std::size_t r,
                    std::size_t c) { return m.at(r, c); });
}

VerifyReport verify_channel(const AmplitudeMatrix& channel, EncodingMode mode,
                            bool inject_fault) {
  check_size(channel.rows(), channel.cols());
  const QuantumImage image = encode(channel, mode);
  const DenominatorKey& key = *image.key();

  AmplitudeMatrix fast = decode(image, key);
  if (inject_fault) {
    std::vector<std::uint32_t> values(fast.values().begin(),
                                      fast.values().end());
    values[0] ^= 1u;
    fast = AmplitudeMatrix(fast.rows(), fast.cols(), fast.bit_depth(),
                           std::move(values));
  }

  DenseMatrix registers = render_dense(image, std::nullopt, View::Register);
  double sum = 0.0;
  for (double v : registers.values()) sum += v;
  const double scale = static_cast<double>(key.total()) / sum;
  DenseMatrix reconstructed(registers.rows(), registers.cols());
  for (std::size_t r = 0; r < registers.rows(); ++r) {
    for (std::size_t c = 0; c < registers.cols(); ++c) {
      reconstructed.at(r, c) = registers.at(r, c) * scale;
    }
  }

  VerifyReport report;
  report.reconstruction = assert_equiv(fast, reconstructed);
  report.normalized = assert_equiv(normalized_view(image, key),
                                   render_dense(image, key, View::Normalized));
  return report;
}

}  // namespace qir::oracle
