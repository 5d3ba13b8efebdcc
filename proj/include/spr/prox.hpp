#ifndef SPR_PROX_HPP
#define SPR_PROX_HPP

#include "spr/majorizer.hpp"
#include "spr/model.hpp"
#include "spr/types.hpp"

namespace spr {

/// One scalar proximal problem: minimize over u
///   fit(majorizer(u; s, y)) + (mu/2) |u - d|^2.
struct ProxProblem {
  double y = 0.0;
  Complex s{0.0, 0.0};
  Complex d{0.0, 0.0};
  double mu = 1.0;
  NoiseModel model{};
};

enum class ProxCandidate { UPlus, UMinus, UPm, Origin };

struct ProxResult {
  Complex u{0.0, 0.0};
  double objective = 0.0;
  ProxCandidate tag = ProxCandidate::UPlus;
};

/// (x/|x|) max(|x| - tau, 0); zero stays zero.
Complex soft_threshold(Complex x, double tau);
void soft_threshold_inplace(ComplexVector& x, double tau);

/// Exact minimizer of beta ||x||_1 + (mu/2) ||A x - (u - b)||^2 when
/// A'A = I: elementwise soft threshold of A'(u - b) at beta/mu.
/// Throws if the operator is not left-unitary.
ComplexVector x_update_unitary(const SensingOperator& op, const ComplexVector& u,
                               const ComplexVector& b, double beta, double mu);

/// FISTA iterations for the same objective with general A, warm-started at
/// x0. Step constant c satisfies c I >= mu A'A (c = mu for masked unitary
/// DFT rows, otherwise an inflated power-iteration estimate).
ComplexVector x_update_fista(const SensingOperator& op, const ComplexVector& u,
                             const ComplexVector& b, double beta, double mu,
                             const ComplexVector& x0, std::size_t iters);

/// Closed-form scalar update for the Laplace (p = 1, q = 2) model. The three
/// stationary candidates are evaluated against max{f+, f-} and the best one
/// returned.
ProxResult u_update_laplace(const ProxProblem& prob);

/// Closed-form scalar update for the Gaussian (p = 2, q = 2) model: depressed
/// cubic for the convex branch, linear closed form for the tangent branch,
/// quartic in tan(theta/2) plus the theta = +-pi endpoints along the
/// equal-value circle.
ProxResult u_update_gaussian(const ProxProblem& prob);

ProxResult u_update(const ProxProblem& prob);

/// Euclidean projection onto { x : ||x||_1 <= beta }; moduli are thresholded,
/// phases preserved.
ComplexVector project_l1_ball(const ComplexVector& x, double beta);

/// Objective pieces of the scalar problem, exposed for tests and candidate
/// diagnostics: f+ = (mu/2)|u-d|^2 + fit(|u|^2 - y), f- pairs the quadratic
/// with the fitted tangent branch (after the s substitution).
double prox_f_plus(const ProxProblem& prob, Complex u);
double prox_f_minus(const ProxProblem& prob, Complex u);
double prox_objective(const ProxProblem& prob, Complex u);

}  // namespace spr

#endif  // SPR_PROX_HPP
