#ifndef SPR_BASELINE_HPP
#define SPR_BASELINE_HPP

#include <cstdint>

#include "spr/model.hpp"
#include "spr/types.hpp"

namespace spr {

struct FienupConfig {
  double beta = 1.0;        // radius of the l1 ball
  std::size_t iters = 500;  // per-restart cap
  std::size_t n_inits = 40;
  std::uint64_t rng_seed = 0;
  double eps = 1e-8;  // early exit on ||x_i - x_{i-1}||
};

/// Sum_m | |[Ax]_m|^2 - y_m |, the data discrepancy used to pick the best
/// restart of the baseline.
double fienup_discrepancy(const ComplexVector& x, const MeasurementSet& meas,
                          const SensingOperator& op);

/// Alternating projections between Fourier-magnitude consistency on the
/// measured frequencies (unmeasured coefficients pass through) and the
/// Euclidean l1-ball projection in the signal domain. Requires q = 2
/// measurements and a masked unitary DFT operator.
ComplexVector l1_fienup(const MeasurementSet& meas, const SensingOperator& op,
                        const FienupConfig& cfg);

}  // namespace spr

#endif  // SPR_BASELINE_HPP
