#ifndef SPR_SOLVER_HPP
#define SPR_SOLVER_HPP

#include <cstdint>
#include <vector>

#include "spr/majorizer.hpp"
#include "spr/model.hpp"
#include "spr/prox.hpp"
#include "spr/types.hpp"

namespace spr {

struct SolverConfig {
  NoiseModel model{};
  double beta = 0.1;
  double mu = 1.0;
  std::size_t i_mm = 100;
  double eps_mm = 0.0;  // <= 0 selects the default 1e-6 * sqrt(M)
  std::size_t i_admm = 50;
  double eps_admm = 0.0;  // <= 0 selects the default 1e-6 * sqrt(N)
  std::size_t i_fista = 25;
  std::size_t n_inits = 40;
  std::uint64_t rng_seed = 0;
  bool adaptive_mu = false;
  bool record_traces = false;
};

/// Conventional penalty defaults: mu = 1 for Laplace, 0.1 for Gaussian in 1D
/// and 1 for Gaussian on 2D grids.
double default_mu(const NoiseModel& model, bool two_dimensional);

/// Per-inner-iteration records of one ADMM run.
struct AdmmTrace {
  std::vector<double> phi;
  std::vector<double> psi;
  std::vector<double> primal_res;
  std::vector<double> dual_res;
  std::vector<double> mu;
};

struct SolverState {
  ComplexVector x;
  ComplexVector u;
  ComplexVector b;  // scaled dual vector
  ComplexVector s;  // majorization vector the current surrogate is built on
  std::vector<double> psi_trace;  // objective at each accepted outer iterate
  std::vector<double> phi_trace;  // surrogate per inner iterate, last ADMM run
  std::vector<AdmmTrace> admm_history;  // filled when cfg.record_traces
  std::vector<ComplexVector> admm_entry_x;  // x at entry of each recorded run
  std::vector<ComplexVector> admm_entry_s;  // majorization vector of each recorded run
  bool admm_converged = true;
  bool mm_converged = false;
  std::size_t outer_iters = 0;
};

/// Residual-balancing heuristic (Boyd et al. 2010, sec. 3.4.1): double mu
/// when the primal residual dominates tenfold, halve it in the opposite case,
/// rescaling the scaled dual so the underlying multipliers are unchanged.
double adaptive_mu_update(double mu, double primal_res, double dual_res, ComplexVector& b);

/// Inner ADMM loop for the surrogate with state.s held fixed. Enters with
/// state.x and state.u (the scaled dual is re-derived as Ax - u) and iterates
/// x-update / per-measurement u-update / dual ascent until the x movement
/// drops below eps_admm or i_admm is reached.
void admm_solve(SolverState& state, const MeasurementSet& meas, const SensingOperator& op,
                const SolverConfig& cfg);

/// Outer majorize-minimize loop from an initial majorization vector s0:
/// alternates the ADMM solve with s <- Ax, warm-starting each inner run from
/// the previous x. An outer step that increases the objective is retried once
/// with a tighter inner tolerance and otherwise rejected.
SolverState mm_solve(const ComplexVector& s0, const MeasurementSet& meas,
                     const SensingOperator& op, const SolverConfig& cfg);

struct MultiInitResult {
  SolverState best;
  std::vector<double> psi_per_init;
  std::size_t best_index = 0;
};

/// Runs mm_solve from n_inits random majorization vectors (i.i.d. circular
/// complex Gaussian entries with standard deviation sqrt(mean(y))) and keeps
/// the state with the lowest final objective.
MultiInitResult multi_init_solve(const MeasurementSet& meas, const SensingOperator& op,
                                 const SolverConfig& cfg);

}  // namespace spr

#endif  // SPR_SOLVER_HPP
