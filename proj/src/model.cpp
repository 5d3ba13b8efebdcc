#include "spr/model.hpp"

#include <cmath>
#include <stdexcept>

#include "spr/fft.hpp"
#include "spr/rng.hpp"

namespace spr {

SparseSignal generate_sparse_signal(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k > n) throw std::invalid_argument("sparsity exceeds signal length");
  Rng rng(seed);
  SparseSignal sig;
  sig.vector.assign(n, Complex{0.0, 0.0});
  sig.support = rng.sample_without_replacement(n, k);
  sig.sparsity = k;
  for (std::size_t idx : sig.support) {
    const double amp = rng.uniform(0.5, 1.0);
    const double phase = rng.uniform(0.0, 2.0 * M_PI);
    sig.vector[idx] = std::polar(amp, phase);
  }
  return sig;
}

SensingOperator SensingOperator::masked_dft(std::size_t n, IndexVector mask) {
  for (std::size_t f : mask)
    if (f >= n) throw std::invalid_argument("mask index out of range");
  SensingOperator op;
  op.kind_ = OperatorKind::MaskedUnitaryDft;
  op.input_dim_ = n;
  op.output_dim_ = mask.size();
  op.n1_ = n;
  op.n2_ = 0;
  op.mask_ = std::move(mask);
  op.left_unitary_ = (op.output_dim_ == n);
  return op;
}

SensingOperator SensingOperator::masked_dft_2d(std::size_t n1, std::size_t n2,
                                               IndexVector mask) {
  const std::size_t n = n1 * n2;
  for (std::size_t f : mask)
    if (f >= n) throw std::invalid_argument("mask index out of range");
  SensingOperator op;
  op.kind_ = OperatorKind::MaskedUnitaryDft;
  op.input_dim_ = n;
  op.output_dim_ = mask.size();
  op.n1_ = n1;
  op.n2_ = n2;
  op.mask_ = std::move(mask);
  op.left_unitary_ = (op.output_dim_ == n);
  return op;
}

SensingOperator SensingOperator::dense(std::size_t rows, std::size_t cols,
                                       ComplexVector entries) {
  if (entries.size() != rows * cols) throw std::invalid_argument("dense operator size mismatch");
  SensingOperator op;
  op.kind_ = OperatorKind::DenseMatrix;
  op.input_dim_ = cols;
  op.output_dim_ = rows;
  op.matrix_ = std::move(entries);

  // Detect A'A = I so callers can take the closed-form x-update.
  if (rows >= cols) {
    bool unitary = true;
    for (std::size_t i = 0; i < cols && unitary; ++i) {
      for (std::size_t j = i; j < cols && unitary; ++j) {
        Complex acc{0.0, 0.0};
        for (std::size_t r = 0; r < rows; ++r)
          acc += std::conj(op.matrix_[r * cols + i]) * op.matrix_[r * cols + j];
        const Complex want = (i == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
        if (std::abs(acc - want) > 1e-12 * static_cast<double>(rows)) unitary = false;
      }
    }
    op.left_unitary_ = unitary;
  }
  return op;
}

ComplexVector SensingOperator::full_spectrum(const ComplexVector& x) const {
  if (kind_ != OperatorKind::MaskedUnitaryDft)
    throw std::logic_error("full_spectrum requires the DFT kind");
  if (x.size() != input_dim_) throw std::invalid_argument("apply: dimension mismatch");
  return is_2d() ? fft::forward2d(x, n1_, n2_) : fft::forward(x);
}

ComplexVector SensingOperator::from_full_spectrum(const ComplexVector& spectrum) const {
  if (kind_ != OperatorKind::MaskedUnitaryDft)
    throw std::logic_error("from_full_spectrum requires the DFT kind");
  if (spectrum.size() != input_dim_)
    throw std::invalid_argument("from_full_spectrum: dimension mismatch");
  return is_2d() ? fft::inverse2d(spectrum, n1_, n2_) : fft::inverse(spectrum);
}

ComplexVector SensingOperator::apply(const ComplexVector& x) const {
  if (x.size() != input_dim_) throw std::invalid_argument("apply: dimension mismatch");
  if (kind_ == OperatorKind::MaskedUnitaryDft) {
    const ComplexVector spectrum = full_spectrum(x);
    ComplexVector out(output_dim_);
    for (std::size_t m = 0; m < output_dim_; ++m) out[m] = spectrum[mask_[m]];
    return out;
  }
  ComplexVector out(output_dim_, Complex{0.0, 0.0});
  for (std::size_t r = 0; r < output_dim_; ++r) {
    Complex acc{0.0, 0.0};
    for (std::size_t cidx = 0; cidx < input_dim_; ++cidx)
      acc += matrix_[r * input_dim_ + cidx] * x[cidx];
    out[r] = acc;
  }
  return out;
}

ComplexVector SensingOperator::adjoint(const ComplexVector& v) const {
  if (v.size() != output_dim_) throw std::invalid_argument("adjoint: dimension mismatch");
  if (kind_ == OperatorKind::MaskedUnitaryDft) {
    ComplexVector spectrum(input_dim_, Complex{0.0, 0.0});
    for (std::size_t m = 0; m < output_dim_; ++m) spectrum[mask_[m]] = v[m];
    return from_full_spectrum(spectrum);
  }
  ComplexVector out(input_dim_, Complex{0.0, 0.0});
  for (std::size_t r = 0; r < output_dim_; ++r)
    for (std::size_t cidx = 0; cidx < input_dim_; ++cidx)
      out[cidx] += std::conj(matrix_[r * input_dim_ + cidx]) * v[r];
  return out;
}

double SensingOperator::operator_norm() const {
  if (kind_ == OperatorKind::MaskedUnitaryDft) return 1.0;
  const SpectralNormEstimate est = spectral_norm(as_linear_map(), 200, 1e-9);
  return est.value;
}

LinearMap SensingOperator::as_linear_map() const {
  LinearMap map;
  map.input_dim = input_dim_;
  map.output_dim = output_dim_;
  map.apply = [this](const ComplexVector& x) { return apply(x); };
  map.adjoint = [this](const ComplexVector& v) { return adjoint(v); };
  return map;
}

MeasurementSet simulate_measurements(const SparseSignal& x, const SensingOperator& op,
                                     double q, std::optional<GaussianNoise> noise,
                                     std::uint64_t noise_seed) {
  if (x.vector.size() != op.input_dim())
    throw std::invalid_argument("simulate_measurements: dimension mismatch");
  if (q < 1.0) throw std::invalid_argument("measurement power must be >= 1");
  MeasurementSet meas;
  meas.q = q;
  meas.mask = op.mask();
  meas.ground_truth = x;
  const ComplexVector ax = op.apply(x.vector);
  meas.y.resize(ax.size());
  for (std::size_t m = 0; m < ax.size(); ++m) meas.y[m] = std::pow(std::abs(ax[m]), q);
  if (noise && noise->sigma > 0.0) {
    Rng rng(noise_seed);
    for (auto& v : meas.y) v += noise->sigma * rng.normal();
  }
  return meas;
}

MeasurementSet inject_outliers(const MeasurementSet& m, std::size_t count,
                               std::uint64_t seed) {
  if (count > m.y.size()) throw std::invalid_argument("more outliers than measurements");
  MeasurementSet out = m;
  if (count == 0) return out;
  double peak = 0.0;
  for (double v : m.y) peak = std::max(peak, v);
  Rng rng(seed);
  out.outlier_indices = rng.sample_without_replacement(m.y.size(), count);
  for (std::size_t idx : out.outlier_indices) out.y[idx] = 2.0 * peak;
  return out;
}

IndexVector draw_frequency_mask(std::size_t n_freq, std::size_t m, std::uint64_t seed) {
  if (m > n_freq) throw std::invalid_argument("mask larger than frequency grid");
  Rng rng(seed);
  return rng.sample_without_replacement(n_freq, m);
}

}  // namespace spr
