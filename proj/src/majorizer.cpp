#include "spr/majorizer.hpp"

#include <cmath>
#include <stdexcept>

#include "spr/numerics.hpp"

namespace spr {

double data_error(Complex t, double y, double q) {
  return std::abs(y - std::pow(std::abs(t), q));
}

double tangent_surrogate(Complex t, const MajorizationPoint& pt) {
  const double mag_s = std::abs(pt.s);
  if (pt.q == 1.0 && mag_s == 0.0) return pt.y;  // constant tangent plane
  const double sq = std::pow(mag_s, pt.q);
  const double slope = pt.q * std::pow(mag_s, pt.q - 1.0);
  const double along = (t * std::conj(unit_phase(pt.s))).real();
  return pt.y + (pt.q - 1.0) * sq - slope * along;
}

double majorizer_value(Complex t, const MajorizationPoint& pt) {
  const double h_plus = std::pow(std::abs(t), pt.q) - pt.y;
  if (pt.y <= 0.0) return h_plus;
  const double sq = std::pow(std::abs(pt.s), pt.q);
  if (sq < pt.y) return std::max(h_plus, tangent_surrogate(t, pt));
  // s lies in the convex region; use the tangent at the radial point with
  // |.|^q = y so the surrogate stays tight where it matters.
  MajorizationPoint shifted = pt;
  shifted.s = std::pow(pt.y, 1.0 / pt.q) * unit_phase(pt.s);
  return std::max(h_plus, tangent_surrogate(t, shifted));
}

double objective_psi_at(const ComplexVector& t, double l1_of_x,
                        const MeasurementSet& meas, const NoiseModel& model, double beta) {
  if (t.size() != meas.y.size()) throw std::invalid_argument("objective_psi: dimension mismatch");
  double acc = 0.0;
  for (std::size_t m = 0; m < t.size(); ++m)
    acc += model.fit(data_error(t[m], meas.y[m], model.q));
  return acc + beta * l1_of_x;
}

double surrogate_phi_at(const ComplexVector& t, const ComplexVector& s, double l1_of_x,
                        const MeasurementSet& meas, const NoiseModel& model, double beta) {
  if (t.size() != meas.y.size() || s.size() != meas.y.size())
    throw std::invalid_argument("surrogate_phi: dimension mismatch");
  double acc = 0.0;
  for (std::size_t m = 0; m < t.size(); ++m)
    acc += model.fit(majorizer_value(t[m], {s[m], meas.y[m], model.q}));
  return acc + beta * l1_of_x;
}

double objective_psi(const ComplexVector& x, const MeasurementSet& meas,
                     const SensingOperator& op, const NoiseModel& model, double beta) {
  return objective_psi_at(op.apply(x), norm1(x), meas, model, beta);
}

double surrogate_phi(const ComplexVector& x, const ComplexVector& s,
                     const MeasurementSet& meas, const SensingOperator& op,
                     const NoiseModel& model, double beta) {
  return surrogate_phi_at(op.apply(x), s, norm1(x), meas, model, beta);
}

}  // namespace spr
