#ifndef SPR_MAJORIZER_HPP
#define SPR_MAJORIZER_HPP

#include "spr/model.hpp"
#include "spr/types.hpp"

namespace spr {

/// Measurement noise model: p = 1 (Laplace, absolute data fit) or
/// p = 2 (Gaussian, squared data fit). q is the magnitude power of the
/// measurements; the closed-form solver kernels require q = 2.
struct NoiseModel {
  int p = 1;
  double q = 2.0;

  double fit(double h) const { return p == 2 ? h * h : h; }
};

/// Per-measurement expansion point of the convex surrogate.
struct MajorizationPoint {
  Complex s;
  double y = 0.0;
  double q = 2.0;
};

/// |y - |t|^q|, the data prediction error.
double data_error(Complex t, double y, double q);

/// Tangent plane to the concave branch y - |t|^q at the point pt.s; for
/// q = 1 and s = 0 this is the constant plane y.
double tangent_surrogate(Complex t, const MajorizationPoint& pt);

/// Piecewise convex majorizer of data_error. Branches: y <= 0 uses the convex
/// part alone; |s|^q < y uses the tangent at s; otherwise the tangent at the
/// radial point with |.|^q = y sharing s's phase.
double majorizer_value(Complex t, const MajorizationPoint& pt);

/// Psi(x) = sum_m fit(data_error([Ax]_m, y_m, q)) + beta * ||x||_1.
double objective_psi(const ComplexVector& x, const MeasurementSet& meas,
                     const SensingOperator& op, const NoiseModel& model, double beta);

/// Phi(x; s) = sum_m fit(majorizer([Ax]_m; s_m, y_m)) + beta * ||x||_1.
double surrogate_phi(const ComplexVector& x, const ComplexVector& s,
                     const MeasurementSet& meas, const SensingOperator& op,
                     const NoiseModel& model, double beta);

/// Same sums evaluated on a precomputed transform vector t = Ax.
double objective_psi_at(const ComplexVector& t, double l1_of_x,
                        const MeasurementSet& meas, const NoiseModel& model, double beta);
double surrogate_phi_at(const ComplexVector& t, const ComplexVector& s, double l1_of_x,
                        const MeasurementSet& meas, const NoiseModel& model, double beta);

}  // namespace spr

#endif  // SPR_MAJORIZER_HPP
