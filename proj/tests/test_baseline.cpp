#include <doctest.h>

#include <cmath>

#include "spr/baseline.hpp"
#include "spr/numerics.hpp"
#include "spr/prox.hpp"
#include "spr/rng.hpp"

using namespace spr;

namespace {

IndexVector full_mask(std::size_t n) {
  IndexVector mask(n);
  for (std::size_t i = 0; i < n; ++i) mask[i] = i;
  return mask;
}

/// One alternating-projection sweep, mirroring the loop body of l1_fienup.
ComplexVector fienup_step(const ComplexVector& x, const MeasurementSet& meas,
                          const SensingOperator& op, double beta) {
  ComplexVector spectrum = op.full_spectrum(x);
  for (std::size_t m = 0; m < op.mask().size(); ++m) {
    const double target = std::sqrt(std::max(meas.y[m], 0.0));
    spectrum[op.mask()[m]] = target * unit_phase(spectrum[op.mask()[m]]);
  }
  return project_l1_ball(op.from_full_spectrum(spectrum), beta);
}

}  // namespace

TEST_CASE("consistent signals are fixed points of the projection sweep") {
  const std::size_t n = 32;
  const auto sig = generate_sparse_signal(n, 3, 4);
  const auto op = SensingOperator::masked_dft(n, draw_frequency_mask(n, 20, 5));
  const auto meas = simulate_measurements(sig, op, 2.0);

  const ComplexVector next = fienup_step(sig.vector, meas, op, norm1(sig.vector));
  CHECK(dist2(next, sig.vector) < 1e-10);
}

TEST_CASE("magnitude projection is exact on measured indices") {
  const std::size_t n = 24;
  const auto sig = generate_sparse_signal(n, 4, 6);
  const auto op = SensingOperator::masked_dft(n, draw_frequency_mask(n, 12, 7));
  const auto meas = simulate_measurements(generate_sparse_signal(n, 2, 8), op, 2.0);

  // A huge ball keeps the l1 projection out of the way, so the measured
  // moduli of the step output must equal sqrt(y) exactly.
  const ComplexVector stepped = fienup_step(sig.vector, meas, op, 1e9);
  const ComplexVector spectrum = op.full_spectrum(stepped);
  for (std::size_t m = 0; m < op.mask().size(); ++m) {
    CHECK(std::abs(spectrum[op.mask()[m]]) ==
          doctest::Approx(std::sqrt(std::max(meas.y[m], 0.0))).epsilon(1e-12));
  }
}

TEST_CASE("l1_fienup basics") {
  const std::size_t n = 32;
  const auto sig = generate_sparse_signal(n, 2, 11);
  const auto op = SensingOperator::masked_dft(n, full_mask(n));
  const auto meas = simulate_measurements(sig, op, 2.0);

  FienupConfig cfg;
  cfg.beta = norm1(sig.vector);
  cfg.n_inits = 10;
  cfg.rng_seed = 3;
  const ComplexVector x = l1_fienup(meas, op, cfg);
  CHECK(norm1(x) <= cfg.beta + 1e-9);

  // Tiny ball collapses the output.
  FienupConfig tiny = cfg;
  tiny.beta = 1e-9;
  CHECK(norm1(l1_fienup(meas, op, tiny)) <= 1e-9 + 1e-12);

  // Deterministic under a fixed seed.
  const ComplexVector rerun = l1_fienup(meas, op, cfg);
  CHECK(dist2(rerun, x) == 0.0);

  // Only the masked-DFT kind is supported.
  const auto dense = SensingOperator::dense(1, 1, {Complex{1.0, 0.0}});
  MeasurementSet dense_meas;
  dense_meas.y = {1.0};
  dense_meas.mask = {0};
  CHECK_THROWS(l1_fienup(dense_meas, dense, cfg));
}

TEST_CASE("negative measurements are clamped before the square root") {
  const std::size_t n = 16;
  const auto op = SensingOperator::masked_dft(n, full_mask(n));
  MeasurementSet meas;
  meas.mask = full_mask(n);
  meas.y.assign(n, 0.01);
  meas.y[3] = -0.5;

  Rng rng(5);
  ComplexVector x(n);
  for (auto& z : x) z = rng.complex_normal(1.0);
  const ComplexVector stepped = fienup_step(x, meas, op, 1e9);
  const ComplexVector spectrum = op.full_spectrum(stepped);
  CHECK(std::abs(spectrum[3]) < 1e-12);
}
