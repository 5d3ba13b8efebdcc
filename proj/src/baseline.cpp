#include "spr/baseline.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spr/numerics.hpp"
#include "spr/prox.hpp"
#include "spr/rng.hpp"

namespace spr {
namespace {

/// Replace the modulus of the measured coefficients with sqrt(max(y, 0)),
/// keeping phases; coefficients off the mask are left untouched.
void project_magnitudes(ComplexVector& spectrum, const MeasurementSet& meas,
                        const IndexVector& mask) {
  for (std::size_t m = 0; m < mask.size(); ++m) {
    const double target = std::sqrt(std::max(meas.y[m], 0.0));
    spectrum[mask[m]] = target * unit_phase(spectrum[mask[m]]);
  }
}

}  // namespace

double fienup_discrepancy(const ComplexVector& x, const MeasurementSet& meas,
                          const SensingOperator& op) {
  const ComplexVector ax = op.apply(x);
  double acc = 0.0;
  for (std::size_t m = 0; m < ax.size(); ++m) acc += std::abs(std::norm(ax[m]) - meas.y[m]);
  return acc;
}

ComplexVector l1_fienup(const MeasurementSet& meas, const SensingOperator& op,
                        const FienupConfig& cfg) {
  if (op.kind() != OperatorKind::MaskedUnitaryDft)
    throw std::invalid_argument("l1_fienup requires a masked unitary DFT operator");
  if (meas.q != 2.0) throw std::invalid_argument("l1_fienup requires squared-magnitude data");
  if (!(cfg.beta > 0.0) || cfg.iters < 1 || cfg.n_inits < 1)
    throw std::invalid_argument("l1_fienup: bad configuration");
  if (meas.y.size() != op.output_dim())
    throw std::invalid_argument("l1_fienup: measurement size mismatch");

  const IndexVector& mask = op.mask();
  ComplexVector best(op.input_dim(), Complex{0.0, 0.0});
  double best_score = std::numeric_limits<double>::infinity();

  for (std::size_t init = 0; init < cfg.n_inits; ++init) {
    Rng rng(derive_seed(cfg.rng_seed, init));

    // Start from the measured magnitudes with random phases.
    ComplexVector spectrum(op.input_dim(), Complex{0.0, 0.0});
    for (std::size_t m = 0; m < mask.size(); ++m) {
      const double mag = std::sqrt(std::max(meas.y[m], 0.0));
      spectrum[mask[m]] = std::polar(mag, rng.uniform(0.0, 2.0 * M_PI));
    }
    ComplexVector x = project_l1_ball(op.from_full_spectrum(spectrum), cfg.beta);

    for (std::size_t it = 0; it < cfg.iters; ++it) {
      spectrum = op.full_spectrum(x);
      project_magnitudes(spectrum, meas, mask);
      ComplexVector next = project_l1_ball(op.from_full_spectrum(spectrum), cfg.beta);
      const double step = dist2(next, x);
      x = std::move(next);
      if (step < cfg.eps) break;
    }

    const double score = fienup_discrepancy(x, meas, op);
    if (score < best_score) {
      best_score = score;
      best = std::move(x);
    }
  }
  return best;
}

}  // namespace spr
