#ifndef SPR_MODEL_HPP
#define SPR_MODEL_HPP

#include <cstdint>
#include <optional>

#include "spr/numerics.hpp"
#include "spr/types.hpp"

namespace spr {

/// Sparse complex signal together with its support.
struct SparseSignal {
  ComplexVector vector;
  IndexVector support;  // sorted indices of the nonzero entries
  std::size_t sparsity = 0;
};

/// K-sparse length-N signal: support uniform without replacement, amplitudes
/// uniform on [0.5, 1], phases uniform on [0, 2pi). Deterministic per seed.
SparseSignal generate_sparse_signal(std::size_t n, std::size_t k, std::uint64_t seed);

enum class OperatorKind { MaskedUnitaryDft, DenseMatrix };

/// Linear sensing operator: either M rows of a unitary DFT (1D or 2D grid)
/// selected by a frequency mask, or an explicit dense matrix. Immutable and
/// shareable across concurrent solver instances.
class SensingOperator {
 public:
  static SensingOperator masked_dft(std::size_t n, IndexVector mask);
  static SensingOperator masked_dft_2d(std::size_t n1, std::size_t n2, IndexVector mask);
  static SensingOperator dense(std::size_t rows, std::size_t cols, ComplexVector entries);

  ComplexVector apply(const ComplexVector& x) const;
  ComplexVector adjoint(const ComplexVector& v) const;

  OperatorKind kind() const { return kind_; }
  std::size_t input_dim() const { return input_dim_; }
  std::size_t output_dim() const { return output_dim_; }
  const IndexVector& mask() const { return mask_; }
  bool is_2d() const { return n2_ > 0; }
  std::size_t grid_rows() const { return n1_; }
  std::size_t grid_cols() const { return n2_; }

  /// A'A == I, i.e. the soft-threshold x-update applies. True for the DFT
  /// kind only with a full mask; checked numerically for dense matrices.
  bool left_unitary() const { return left_unitary_; }

  /// Masked unitary DFT rows are orthonormal, so the norm is exactly 1;
  /// dense operators fall back to power iteration.
  double operator_norm() const;

  /// Full-spectrum unitary transform over the operator's grid (all N_freq
  /// coefficients, not just the masked ones).
  ComplexVector full_spectrum(const ComplexVector& x) const;
  ComplexVector from_full_spectrum(const ComplexVector& spectrum) const;

  LinearMap as_linear_map() const;

 private:
  SensingOperator() = default;

  OperatorKind kind_ = OperatorKind::MaskedUnitaryDft;
  std::size_t input_dim_ = 0;
  std::size_t output_dim_ = 0;
  std::size_t n1_ = 0;  // 1D length, or 2D rows
  std::size_t n2_ = 0;  // 0 for 1D, 2D cols otherwise
  IndexVector mask_;
  ComplexVector matrix_;  // row-major, dense kind only
  bool left_unitary_ = false;
};

struct GaussianNoise {
  double sigma = 0.0;
};

/// Squared-magnitude (power-q) measurements with outlier bookkeeping.
struct MeasurementSet {
  RealVector y;
  IndexVector mask;             // frequency index per measurement row
  IndexVector outlier_indices;  // rows replaced by outliers
  double q = 2.0;
  std::optional<SparseSignal> ground_truth;
};

/// y_m = |[Ax]_m|^q (+ optional Gaussian noise). Throws on dimension mismatch.
MeasurementSet simulate_measurements(const SparseSignal& x, const SensingOperator& op,
                                     double q,
                                     std::optional<GaussianNoise> noise = std::nullopt,
                                     std::uint64_t noise_seed = 0);

/// Replaces `count` uniformly chosen rows with twice the pre-injection
/// maximum measurement. Deterministic per seed.
MeasurementSet inject_outliers(const MeasurementSet& m, std::size_t count,
                               std::uint64_t seed);

/// Uniform-without-replacement frequency mask of size m over n_freq bins.
IndexVector draw_frequency_mask(std::size_t n_freq, std::size_t m, std::uint64_t seed);

}  // namespace spr

#endif  // SPR_MODEL_HPP
