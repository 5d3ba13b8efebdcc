#ifndef SPR_NUMERICS_HPP
#define SPR_NUMERICS_HPP

#include <array>
#include <functional>

#include "spr/types.hpp"

namespace spr {

/// Real coefficients in descending degree order. Leading entries may be zero;
/// the solvers degenerate to the lower-degree problem.
using CubicCoeffs = std::array<double, 4>;
using QuarticCoeffs = std::array<double, 5>;

/// All real roots of c0*x^3 + c1*x^2 + c2*x + c3, multiplicity collapsed.
/// Closed form (trig/Cardano) plus Newton polish; roots closer than
/// 1e-7 * max(1, |root|) are reported once. Throws std::invalid_argument on
/// the identically zero polynomial.
RealVector real_roots_cubic(const CubicCoeffs& c);

/// All real roots of the quartic, same conventions as real_roots_cubic.
/// Ferrari resolvent with Newton polish.
RealVector real_roots_quartic(const QuarticCoeffs& c);

/// z/|z| for z != 0, and 1+0i for z == 0.
inline Complex unit_phase(Complex z) {
  const double r = std::abs(z);
  if (r == 0.0) return {1.0, 0.0};
  return {z.real() / r, z.imag() / r};
}

/// Minimal linear-operator view used by routines that only need apply/adjoint.
struct LinearMap {
  std::size_t input_dim = 0;
  std::size_t output_dim = 0;
  std::function<ComplexVector(const ComplexVector&)> apply;
  std::function<ComplexVector(const ComplexVector&)> adjoint;
};

struct SpectralNormEstimate {
  double value = 0.0;
  bool converged = false;
};

/// Largest singular value via power iteration on A'A. On non-convergence the
/// running estimate is inflated by 5% so it stays a safe upper bound for step
/// size selection.
SpectralNormEstimate spectral_norm(const LinearMap& op, std::size_t max_iters,
                                   double tol);

}  // namespace spr

#endif  // SPR_NUMERICS_HPP
