#include "spr/prox.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "spr/numerics.hpp"

namespace spr {
namespace {

void validate(const ProxProblem& prob, int expected_p) {
  if (prob.model.p != expected_p) throw std::invalid_argument("prox: wrong noise model");
  if (prob.model.q != 2.0) throw std::invalid_argument("prox: closed forms require q = 2");
  if (!(prob.mu > 0.0)) throw std::invalid_argument("prox: mu must be positive");
}

/// The s actually used by the tangent branch: s itself in the concave region,
/// the radial point with squared modulus y otherwise. Applied once, before
/// candidate generation.
Complex effective_s(const ProxProblem& prob) {
  if (prob.y <= 0.0) return prob.s;
  if (std::norm(prob.s) >= prob.y) return std::sqrt(prob.y) * unit_phase(prob.s);
  return prob.s;
}

struct Candidate {
  Complex u;
  ProxCandidate tag;
};

/// Deterministic tie-break: objective, then modulus, then phase angle.
bool better(double obj_a, Complex ua, double obj_b, Complex ub) {
  if (obj_a != obj_b) return obj_a < obj_b;
  const double ma = std::abs(ua), mb = std::abs(ub);
  if (ma != mb) return ma < mb;
  return std::arg(ua) < std::arg(ub);
}

ProxResult select_best(const ProxProblem& prob, const std::vector<Candidate>& cands) {
  ProxResult best;
  bool have = false;
  for (const auto& c : cands) {
    const double obj = prox_objective(prob, c.u);
    if (!have || better(obj, c.u, best.objective, best.u)) {
      best = {c.u, obj, c.tag};
      have = true;
    }
  }
  if (!have) throw std::logic_error("prox: empty candidate set");
  return best;
}

}  // namespace

double prox_f_plus(const ProxProblem& prob, Complex u) {
  const double quad = 0.5 * prob.mu * std::norm(u - prob.d);
  return quad + prob.model.fit(std::norm(u) - prob.y);
}

double prox_f_minus(const ProxProblem& prob, Complex u) {
  const double quad = 0.5 * prob.mu * std::norm(u - prob.d);
  if (prob.y <= 0.0) return quad;
  const Complex s = effective_s(prob);
  const double tangent = prob.y + std::norm(s) - 2.0 * (u * std::conj(s)).real();
  return quad + prob.model.fit(tangent);
}

double prox_objective(const ProxProblem& prob, Complex u) {
  return std::max(prox_f_plus(prob, u), prox_f_minus(prob, u));
}

Complex soft_threshold(Complex x, double tau) {
  const double mag = std::abs(x);
  if (mag == 0.0) return {0.0, 0.0};
  const double shrunk = mag - tau;
  if (shrunk <= 0.0) return {0.0, 0.0};
  return x * (shrunk / mag);
}

void soft_threshold_inplace(ComplexVector& x, double tau) {
  for (auto& z : x) z = soft_threshold(z, tau);
}

ComplexVector x_update_unitary(const SensingOperator& op, const ComplexVector& u,
                               const ComplexVector& b, double beta, double mu) {
  if (!op.left_unitary())
    throw std::invalid_argument("x_update_unitary requires a left-unitary operator");
  ComplexVector residual(u.size());
  for (std::size_t m = 0; m < u.size(); ++m) residual[m] = u[m] - b[m];
  ComplexVector x = op.adjoint(residual);
  soft_threshold_inplace(x, beta / mu);
  return x;
}

ComplexVector x_update_fista(const SensingOperator& op, const ComplexVector& u,
                             const ComplexVector& b, double beta, double mu,
                             const ComplexVector& x0, std::size_t iters) {
  double c;
  if (op.kind() == OperatorKind::MaskedUnitaryDft) {
    c = mu;  // orthonormal rows: ||A|| = 1 exactly
  } else {
    const double sigma = op.operator_norm();
    c = 1.05 * mu * sigma * sigma;
    if (c <= 0.0) c = mu;
  }

  ComplexVector target(u.size());
  for (std::size_t m = 0; m < u.size(); ++m) target[m] = u[m] - b[m];

  ComplexVector x_prev = x0;
  ComplexVector z = x0;
  ComplexVector x(x0.size());
  double t_prev = 1.0;
  for (std::size_t i = 0; i < iters; ++i) {
    ComplexVector az = op.apply(z);
    for (std::size_t m = 0; m < az.size(); ++m) az[m] = target[m] - az[m];
    const ComplexVector grad = op.adjoint(az);
    for (std::size_t n = 0; n < x.size(); ++n)
      x[n] = soft_threshold(z[n] + (mu / c) * grad[n], beta / c);
    const double t = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_prev * t_prev));
    const double momentum = (t_prev - 1.0) / t;
    for (std::size_t n = 0; n < x.size(); ++n) z[n] = x[n] + momentum * (x[n] - x_prev[n]);
    x_prev = x;
    t_prev = t;
  }
  return x_prev;
}

ProxResult u_update_laplace(const ProxProblem& prob) {
  validate(prob, 1);
  const double eta = 0.5 * prob.mu;

  // For y <= 0 the convex branch dominates everywhere.
  const Complex u_plus = (eta / (1.0 + eta)) * prob.d;
  if (prob.y <= 0.0) {
    return {u_plus, prox_objective(prob, u_plus), ProxCandidate::UPlus};
  }

  const Complex s = effective_s(prob);
  const double c0 = std::sqrt(2.0 * (prob.y + std::norm(s)));
  std::vector<Candidate> cands;
  cands.push_back({u_plus, ProxCandidate::UPlus});
  cands.push_back({s / eta + prob.d, ProxCandidate::UMinus});
  cands.push_back({c0 * unit_phase((1.0 + eta) * s + eta * prob.d) - s, ProxCandidate::UPm});
  return select_best(prob, cands);
}

ProxResult u_update_gaussian(const ProxProblem& prob) {
  validate(prob, 2);
  const double eta = 0.5 * prob.mu;
  const Complex phase_d = unit_phase(prob.d);

  // Convex branch: quartic in |u| along the phase(d) ray; stationary moduli
  // solve a depressed cubic, with |u| = 0 as the boundary candidate.
  std::vector<double> moduli{0.0};
  for (double r : real_roots_cubic({4.0, 0.0, prob.mu - 4.0 * prob.y, -prob.mu * std::abs(prob.d)}))
    if (r > 0.0) moduli.push_back(r);
  Candidate plus{Complex{0.0, 0.0}, ProxCandidate::Origin};
  double best_fp = 0.0;
  bool have_plus = false;
  for (double r : moduli) {
    const Complex u = r * phase_d;
    const double fp = prox_f_plus(prob, u);
    if (!have_plus || fp < best_fp) {
      plus = {u, r == 0.0 ? ProxCandidate::Origin : ProxCandidate::UPlus};
      best_fp = fp;
      have_plus = true;
    }
  }

  if (prob.y <= 0.0) {
    return {plus.u, prox_objective(prob, plus.u), plus.tag};
  }

  std::vector<Candidate> cands;
  cands.push_back(plus);

  const Complex s = effective_s(prob);
  const double mag_s = std::abs(s);
  const Complex ph_s = unit_phase(s);
  const Complex d_rot = prob.d * std::conj(ph_s);

  // Tangent branch: separable in the rotated frame, linear closed form.
  const double re_u = (eta * d_rot.real() + 2.0 * mag_s * (prob.y + mag_s * mag_s)) /
                      (eta + 4.0 * mag_s * mag_s);
  cands.push_back({Complex{re_u, d_rot.imag()} * ph_s, ProxCandidate::UMinus});

  // Equal-value circle |u_rot + |s||^2 = 2(y + |s|^2), parameterized by the
  // angle theta; stationary angles come from a quartic in tan(theta/2), and
  // theta = +-pi (the substitution's point at infinity) is checked explicitly.
  const double c0 = std::sqrt(2.0 * (prob.y + mag_s * mag_s));
  const double r1 = 2.0 * c0 * mag_s;
  std::vector<double> thetas;
  if (r1 > 0.0) {
    const double c1 = c0 * c0 + mag_s * mag_s - prob.y;
    const Complex w = 2.0 * c0 * (2.0 * c1 * mag_s + eta * (mag_s + d_rot));
    const double k = std::abs(w) / (r1 * r1);
    const double alpha = std::arg(w);
    const double ks = k * std::sin(alpha);
    const double kc = k * std::cos(alpha);
    for (double xi : real_roots_quartic({ks, 2.0 * kc + 4.0, 0.0, 2.0 * kc - 4.0, -ks}))
      thetas.push_back(2.0 * std::atan(xi));
    thetas.push_back(M_PI);
  } else if (c0 > 0.0) {
    // |s| = 0 degenerates the circle term; the restriction of f+ reduces to
    // a single cosine whose minimizer is theta = arg(d) directly.
    thetas.push_back(std::arg(d_rot == Complex{0.0, 0.0} ? Complex{1.0, 0.0} : d_rot));
  }
  for (double theta : thetas) {
    const Complex u = (c0 * std::polar(1.0, theta) - mag_s) * ph_s;
    if (std::norm(u) > prob.y) cands.push_back({u, ProxCandidate::UPm});
  }

  return select_best(prob, cands);
}

ProxResult u_update(const ProxProblem& prob) {
  return prob.model.p == 1 ? u_update_laplace(prob) : u_update_gaussian(prob);
}

ComplexVector project_l1_ball(const ComplexVector& x, double beta) {
  if (beta < 0.0) throw std::invalid_argument("project_l1_ball: negative radius");
  if (beta == 0.0) return ComplexVector(x.size(), Complex{0.0, 0.0});

  RealVector mags(x.size());
  double total = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    mags[n] = std::abs(x[n]);
    total += mags[n];
  }
  if (total <= beta) return x;

  // Sorted-prefix search for the exact threshold [Duchi et al. 2008].
  RealVector sorted = mags;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double cum = 0.0;
  double tau = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cum += sorted[k];
    const double t = (cum - beta) / static_cast<double>(k + 1);
    if (sorted[k] > t) tau = t;
  }

  ComplexVector out(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) out[n] = soft_threshold(x[n], tau);
  return out;
}

}  // namespace spr
