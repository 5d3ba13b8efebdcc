#include "spr/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spr/rng.hpp"

namespace spr {

double default_mu(const NoiseModel& model, bool two_dimensional) {
  if (model.p == 1) return 1.0;
  return two_dimensional ? 1.0 : 0.1;
}

double adaptive_mu_update(double mu, double primal_res, double dual_res, ComplexVector& b) {
  if (primal_res > 10.0 * dual_res) {
    for (auto& z : b) z *= 0.5;
    return mu * 2.0;
  }
  if (dual_res > 10.0 * primal_res) {
    for (auto& z : b) z *= 2.0;
    return mu * 0.5;
  }
  return mu;
}

void admm_solve(SolverState& state, const MeasurementSet& meas, const SensingOperator& op,
                const SolverConfig& cfg) {
  const std::size_t n = op.input_dim();
  const std::size_t m_dim = op.output_dim();
  if (state.x.size() != n || state.u.size() != m_dim || state.s.size() != m_dim)
    throw std::invalid_argument("admm_solve: state dimensions inconsistent with operator");
  if (meas.y.size() != m_dim) throw std::invalid_argument("admm_solve: measurement size mismatch");

  const double eps = cfg.eps_admm > 0.0 ? cfg.eps_admm : 1e-6 * std::sqrt(static_cast<double>(n));
  double mu = cfg.mu;

  ComplexVector ax = op.apply(state.x);
  state.b.resize(m_dim);
  for (std::size_t m = 0; m < m_dim; ++m) state.b[m] = ax[m] - state.u[m];

  state.phi_trace.clear();
  AdmmTrace trace;
  state.admm_converged = false;
  if (cfg.record_traces) {
    state.admm_entry_x.push_back(state.x);
    state.admm_entry_s.push_back(state.s);
  }

  ComplexVector x_prev = state.x;
  ComplexVector u_prev(m_dim);
  for (std::size_t it = 0; it < cfg.i_admm; ++it) {
    state.x = op.left_unitary()
                  ? x_update_unitary(op, state.u, state.b, cfg.beta, mu)
                  : x_update_fista(op, state.u, state.b, cfg.beta, mu, state.x, cfg.i_fista);
    ax = op.apply(state.x);

    u_prev = state.u;
    for (std::size_t m = 0; m < m_dim; ++m) {
      ProxProblem prob{meas.y[m], state.s[m], ax[m] + state.b[m], mu, cfg.model};
      state.u[m] = u_update(prob).u;
    }

    double primal_sq = 0.0;
    for (std::size_t m = 0; m < m_dim; ++m) {
      state.b[m] += ax[m] - state.u[m];
      primal_sq += std::norm(ax[m] - state.u[m]);
    }
    const double primal_res = std::sqrt(primal_sq);

    ComplexVector du(m_dim);
    for (std::size_t m = 0; m < m_dim; ++m) du[m] = state.u[m] - u_prev[m];
    const double dual_res = mu * norm2(op.adjoint(du));

    const double l1x = norm1(state.x);
    const double phi = surrogate_phi_at(ax, state.s, l1x, meas, cfg.model, cfg.beta);
    state.phi_trace.push_back(phi);
    if (cfg.record_traces) {
      trace.phi.push_back(phi);
      trace.psi.push_back(objective_psi_at(ax, l1x, meas, cfg.model, cfg.beta));
      trace.primal_res.push_back(primal_res);
      trace.dual_res.push_back(dual_res);
      trace.mu.push_back(mu);
    }

    if (cfg.adaptive_mu) mu = adaptive_mu_update(mu, primal_res, dual_res, state.b);

    const double dx = dist2(state.x, x_prev);
    x_prev = state.x;
    // The warm start is not an iterate: a zero start reproduces itself in the
    // first x-update before u and b react, so compare computed iterates only.
    // x can also freeze while the dual is still catching up (small mu with a
    // large beta/mu threshold), so require primal feasibility as well.
    if (it >= 1 && dx < eps && primal_res < eps) {
      state.admm_converged = true;
      break;
    }
  }

  if (cfg.record_traces) state.admm_history.push_back(std::move(trace));
}

SolverState mm_solve(const ComplexVector& s0, const MeasurementSet& meas,
                     const SensingOperator& op, const SolverConfig& cfg) {
  const std::size_t n = op.input_dim();
  const std::size_t m_dim = op.output_dim();
  if (s0.size() != m_dim) throw std::invalid_argument("mm_solve: s0 has wrong length");
  if (cfg.i_mm < 1 || cfg.i_admm < 1) throw std::invalid_argument("mm_solve: iteration caps must be >= 1");

  const double eps_mm = cfg.eps_mm > 0.0 ? cfg.eps_mm : 1e-6 * std::sqrt(static_cast<double>(m_dim));

  SolverState state;
  state.x.assign(n, Complex{0.0, 0.0});
  state.u.assign(m_dim, Complex{0.0, 0.0});
  state.b.assign(m_dim, Complex{0.0, 0.0});
  state.s = s0;

  double psi_prev = std::numeric_limits<double>::infinity();
  SolverConfig inner_cfg = cfg;
  inner_cfg.eps_admm = cfg.eps_admm > 0.0 ? cfg.eps_admm : 1e-6 * std::sqrt(static_cast<double>(n));

  for (std::size_t outer = 0; outer < cfg.i_mm; ++outer) {
    const ComplexVector x_before = state.x;
    const ComplexVector s_before = state.s;

    state.u = op.apply(state.x);  // u0 <- A x0, so the scaled dual starts at zero
    admm_solve(state, meas, op, inner_cfg);
    double psi = objective_psi(state.x, meas, op, cfg.model, cfg.beta);

    // Inner solves are inexact; an outer step that increases the objective is
    // retried once with a tighter tolerance, then rejected.
    if (outer > 0 && psi > psi_prev) {
      SolverConfig retry_cfg = inner_cfg;
      retry_cfg.eps_admm = 0.5 * inner_cfg.eps_admm;
      state.x = x_before;
      state.u = op.apply(state.x);
      admm_solve(state, meas, op, retry_cfg);
      psi = objective_psi(state.x, meas, op, cfg.model, cfg.beta);
      if (psi > psi_prev) {
        state.x = x_before;
        state.s = s_before;
        state.outer_iters = outer;
        break;
      }
      inner_cfg.eps_admm = retry_cfg.eps_admm;
    }

    psi_prev = psi;
    state.psi_trace.push_back(psi);
    const ComplexVector s_new = op.apply(state.x);
    const double ds = dist2(s_new, state.s);
    state.s = s_new;
    state.outer_iters = outer + 1;
    if (ds < eps_mm) {
      state.mm_converged = true;
      break;
    }
  }
  return state;
}

MultiInitResult multi_init_solve(const MeasurementSet& meas, const SensingOperator& op,
                                 const SolverConfig& cfg) {
  if (cfg.n_inits < 1) throw std::invalid_argument("multi_init_solve: n_inits must be >= 1");

  double mean_y = 0.0;
  for (double v : meas.y) mean_y += v;
  mean_y /= std::max<std::size_t>(1, meas.y.size());
  const double scale = std::sqrt(std::max(0.0, mean_y));

  MultiInitResult result;
  double best_psi = std::numeric_limits<double>::infinity();
  for (std::size_t init = 0; init < cfg.n_inits; ++init) {
    Rng rng(derive_seed(cfg.rng_seed, init));
    ComplexVector s0(op.output_dim());
    for (auto& z : s0) z = rng.complex_normal(scale);

    SolverState run = mm_solve(s0, meas, op, cfg);
    const double psi = run.psi_trace.empty()
                           ? objective_psi(run.x, meas, op, cfg.model, cfg.beta)
                           : run.psi_trace.back();
    result.psi_per_init.push_back(psi);
    if (psi < best_psi) {
      best_psi = psi;
      result.best = std::move(run);
      result.best_index = init;
    }
  }
  return result;
}

}  // namespace spr
