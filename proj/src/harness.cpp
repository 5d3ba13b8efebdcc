#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>

#include <json.hpp>

#include "harness_internal.hpp"
#include "spr/harness.hpp"
#include "spr/io.hpp"
#include "spr/threadpool.hpp"

namespace spr {

namespace detail {

MethodOutcome run_one_method(Method method, const MeasurementSet& meas,
                             const SensingOperator& op, double beta, const MethodConfig& mcfg,
                             std::uint64_t seed, bool two_dimensional) {
  if (method == Method::L1Fienup) {
    FienupConfig cfg;
    cfg.beta = beta;
    cfg.iters = mcfg.fienup_iters;
    cfg.n_inits = mcfg.n_inits > 0 ? mcfg.n_inits : 40;
    cfg.rng_seed = seed;
    ComplexVector x = l1_fienup(meas, op, cfg);
    const double score = fienup_discrepancy(x, meas, op);
    return {std::move(x), score};
  }

  SolverConfig cfg;
  cfg.model = method == Method::Laplace ? NoiseModel{1, 2.0} : NoiseModel{2, 2.0};
  cfg.beta = beta;
  cfg.mu = mcfg.mu > 0.0 ? mcfg.mu : default_mu(cfg.model, two_dimensional);
  cfg.i_mm = mcfg.i_mm;
  cfg.i_admm = mcfg.i_admm;
  cfg.i_fista = mcfg.i_fista;
  cfg.eps_mm = mcfg.eps_mm;
  cfg.eps_admm = mcfg.eps_admm;
  cfg.n_inits = mcfg.n_inits > 0 ? mcfg.n_inits : (method == Method::Gaussian ? 50 : 40);
  cfg.adaptive_mu = mcfg.adaptive_mu;
  cfg.rng_seed = seed;
  MultiInitResult result = multi_init_solve(meas, op, cfg);
  return {std::move(result.best.x), result.psi_per_init[result.best_index]};
}

double method_support_threshold(Method method, const MethodConfig& mcfg) {
  if (mcfg.support_threshold > 0.0) return mcfg.support_threshold;
  return method == Method::Gaussian ? 0.2 : 0.05;
}

MethodConfig spec_method_cfg(const ExperimentSpec& spec, const std::string& name) {
  auto it = spec.method_cfg.find(name);
  return it == spec.method_cfg.end() ? MethodConfig{} : it->second;
}

double resolve_beta(const ExperimentSpec& spec, const std::string& method, std::size_t k,
                    std::size_t m) {
  const MethodConfig mcfg = spec_method_cfg(spec, method);
  if (mcfg.beta > 0.0) return mcfg.beta;
  if (auto beta = spec.beta_table.lookup(method, k, m)) return *beta;
  throw std::runtime_error("no beta for cell (" + method + ", K=" + std::to_string(k) +
                           ", M=" + std::to_string(m) + "); set method_cfg beta or a table entry");
}

void ensure_output_dir(const std::string& dir) {
  if (!dir.empty()) std::filesystem::create_directories(dir);
}

}  // namespace detail

namespace {

constexpr double kPsnrClampDb = 100.0;

double clamp_psnr(double psnr) { return std::isinf(psnr) ? kPsnrClampDb : psnr; }

struct CellSpec {
  std::string method;
  std::size_t k, m, outliers;
  double beta;
};

void write_trials_csv(const std::string& path, const std::vector<TrialRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "method,k,m,outliers,trial,data_seed,beta,correct,mse,psnr_db,score\n";
  for (const auto& r : rows) {
    out << r.method << ',' << r.k << ',' << r.m << ',' << r.outliers << ',' << r.trial << ','
        << r.data_seed << ',' << io::format_double(r.beta) << ',' << (r.correct ? 1 : 0) << ','
        << io::format_double(r.mse) << ',' << io::format_double(r.psnr_db) << ','
        << io::format_double(r.score) << '\n';
  }
}

void write_aggregate_csv(const std::string& path, const std::vector<AggregateRow>& rows,
                         const std::vector<double>& betas) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "method,k,m,outliers,beta,n_trials,correct_rate,mean_psnr_db\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << r.method << ',' << r.k << ',' << r.m << ',' << r.outliers << ','
        << io::format_double(betas[i]) << ',' << r.n_trials << ','
        << io::format_double(r.correct_rate) << ',' << io::format_double(r.mean_psnr_db) << '\n';
  }
}

void write_manifest(const ExperimentSpec& spec, const std::vector<CellSpec>& cells,
                    const std::string& extra_note) {
  if (spec.output_dir.empty()) return;
  nlohmann::json j;
  j["kind"] = spec.kind;
  j["n"] = spec.n;
  j["n_trials"] = spec.n_trials;
  j["master_seed"] = spec.master_seed;
  j["methods"] = spec.methods;
  j["seed_rule"] =
      "data_seed = derive(derive(derive(derive(master,k),m),outliers),trial); "
      "method restart stream = derive(data_seed, 1000 + method_ordinal); "
      "derive = splitmix64(master + (stream+1)*0x9E3779B97F4A7C15)";
  j["psnr_clamp_db"] = kPsnrClampDb;
  if (!extra_note.empty()) j["note"] = extra_note;
  nlohmann::json jcells = nlohmann::json::array();
  for (const auto& c : cells)
    jcells.push_back({{"method", c.method}, {"k", c.k}, {"m", c.m},
                      {"outliers", c.outliers}, {"beta", c.beta}});
  j["cells"] = jcells;
  std::ofstream out(spec.output_dir + "/manifest.json");
  out << j.dump(2) << '\n';
}

/// Shared trial grid runner for montecarlo / sweep-beta / calibration.
MonteCarloResults run_trial_grid(const ExperimentSpec& spec,
                                 const std::vector<CellSpec>& cells) {
  struct Job {
    std::size_t cell;
    std::size_t trial;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (std::size_t t = 0; t < spec.n_trials; ++t) jobs.push_back({c, t});

  std::vector<TrialRow> rows(jobs.size());
  std::mutex fail_mutex;
  std::string failure;

  parallel_for(jobs.size(), spec.threads, [&](std::size_t idx) {
    try {
      const auto& job = jobs[idx];
      const CellSpec& cell = cells[job.cell];
      const Method method = parse_method(cell.method);
      const MethodConfig mcfg = detail::spec_method_cfg(spec, cell.method);
      const std::uint64_t data_seed =
          detail::trial_data_seed(spec.master_seed, cell.k, cell.m, cell.outliers, job.trial);
      const detail::TrialData data =
          detail::make_trial_data(spec.n, cell.k, cell.m, cell.outliers, data_seed);
      const std::uint64_t method_seed = derive_seed(data_seed, 1000 + method_ordinal(method));

      const detail::MethodOutcome outcome = detail::run_one_method(
          method, data.meas, data.op, cell.beta, mcfg, method_seed, false);
      const EvalReport report = evaluate(outcome.x, data.signal.vector,
                                         detail::method_support_threshold(method, mcfg));

      TrialRow& row = rows[idx];
      row.method = cell.method;
      row.k = cell.k;
      row.m = cell.m;
      row.outliers = cell.outliers;
      row.trial = job.trial;
      row.data_seed = data_seed;
      row.beta = cell.beta;
      row.correct = report.correct;
      row.mse = report.mse;
      row.psnr_db = report.psnr_db;
      row.score = outcome.score;
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(fail_mutex);
      if (failure.empty()) failure = e.what();
    }
  });
  if (!failure.empty()) throw std::runtime_error(failure);

  MonteCarloResults results;
  results.trials = std::move(rows);
  std::sort(results.trials.begin(), results.trials.end(),
            [](const TrialRow& a, const TrialRow& b) {
              return std::tie(a.method, a.k, a.m, a.outliers, a.beta, a.trial) <
                     std::tie(b.method, b.k, b.m, b.outliers, b.beta, b.trial);
            });

  for (std::size_t c = 0; c < cells.size(); ++c) {
    const CellSpec& cell = cells[c];
    AggregateRow agg;
    agg.method = cell.method;
    agg.k = cell.k;
    agg.m = cell.m;
    agg.outliers = cell.outliers;
    std::size_t n_correct = 0;
    double psnr_sum = 0.0;
    for (const auto& row : results.trials) {
      if (row.method != cell.method || row.k != cell.k || row.m != cell.m ||
          row.outliers != cell.outliers || row.beta != cell.beta)
        continue;
      ++agg.n_trials;
      if (row.correct) ++n_correct;
      psnr_sum += clamp_psnr(row.psnr_db);
    }
    agg.correct_rate = agg.n_trials ? static_cast<double>(n_correct) / agg.n_trials : 0.0;
    agg.mean_psnr_db = agg.n_trials ? psnr_sum / agg.n_trials : 0.0;
    results.aggregates.push_back(agg);
  }
  return results;
}

std::vector<double> cell_betas(const std::vector<CellSpec>& cells) {
  std::vector<double> betas;
  betas.reserve(cells.size());
  for (const auto& c : cells) betas.push_back(c.beta);
  return betas;
}

}  // namespace

MonteCarloResults run_montecarlo(const ExperimentSpec& spec) {
  if (spec.n_trials < 1) throw std::invalid_argument("montecarlo: n_trials must be >= 1");

  // Resolve every beta up front so a missing cell fails before any work runs.
  std::vector<CellSpec> cells;
  std::vector<std::string> missing;
  for (const auto& method : spec.methods)
    for (std::size_t k : spec.k_list)
      for (std::size_t m : spec.m_list)
        for (std::size_t outliers : spec.outlier_list) {
          try {
            cells.push_back({method, k, m, outliers, detail::resolve_beta(spec, method, k, m)});
          } catch (const std::exception&) {
            missing.push_back("(" + method + ", K=" + std::to_string(k) +
                              ", M=" + std::to_string(m) + ")");
          }
        }
  if (!missing.empty()) {
    std::string msg = "missing beta for cells:";
    for (const auto& cell : missing) msg += " " + cell;
    throw std::runtime_error(msg);
  }

  MonteCarloResults results = run_trial_grid(spec, cells);
  if (!spec.output_dir.empty()) {
    detail::ensure_output_dir(spec.output_dir);
    write_trials_csv(spec.output_dir + "/trials.csv", results.trials);
    write_aggregate_csv(spec.output_dir + "/aggregate.csv", results.aggregates, cell_betas(cells));
    write_manifest(spec, cells, "");
  }
  return results;
}

MonteCarloResults run_sweep_beta(const ExperimentSpec& spec) {
  if (spec.beta_grid.empty()) throw std::invalid_argument("sweep_beta: beta_grid is empty");
  const std::size_t m = spec.m_list.front();
  const std::size_t outliers = spec.outlier_list.front();

  std::vector<CellSpec> cells;
  for (const auto& method : spec.methods)
    for (std::size_t k : spec.k_list)
      for (double beta : spec.beta_grid) cells.push_back({method, k, m, outliers, beta});

  MonteCarloResults results = run_trial_grid(spec, cells);
  if (!spec.output_dir.empty()) {
    detail::ensure_output_dir(spec.output_dir);
    write_trials_csv(spec.output_dir + "/trials.csv", results.trials);
    write_aggregate_csv(spec.output_dir + "/aggregate.csv", results.aggregates, cell_betas(cells));
    write_manifest(spec, cells, "beta sweep at fixed M=" + std::to_string(m));
  }
  return results;
}

std::vector<MuTraceRow> run_sweep_mu(const ExperimentSpec& spec) {
  const std::size_t k = spec.k_list.front();
  const std::size_t m = spec.m_list.front();
  const std::size_t outliers = spec.outlier_list.front();
  const std::uint64_t data_seed = detail::trial_data_seed(spec.master_seed, k, m, outliers, 0);
  const detail::TrialData data = detail::make_trial_data(spec.n, k, m, outliers, data_seed);

  std::vector<MuTraceRow> rows;
  for (const auto& method_str : spec.methods) {
    const Method method = parse_method(method_str);
    if (method == Method::L1Fienup) continue;  // no ADMM inside the baseline
    const MethodConfig mcfg = detail::spec_method_cfg(spec, method_str);
    const double beta = detail::resolve_beta(spec, method_str, k, m);
    const std::uint64_t method_seed = derive_seed(data_seed, 1000 + method_ordinal(method));

    for (double mu : spec.mu_grid) {
      SolverConfig cfg;
      cfg.model = method == Method::Laplace ? NoiseModel{1, 2.0} : NoiseModel{2, 2.0};
      cfg.beta = beta;
      cfg.mu = mu;
      cfg.i_mm = mcfg.i_mm;
      cfg.i_admm = mcfg.i_admm;
      cfg.i_fista = mcfg.i_fista;
      cfg.n_inits = 1;
      cfg.rng_seed = method_seed;
      cfg.record_traces = true;

      MultiInitResult result = multi_init_solve(data.meas, data.op, cfg);
      const SolverState& state = result.best;
      if (state.admm_history.empty()) continue;

      const std::size_t n_runs = state.admm_history.size();
      const std::size_t picks[2] = {0, n_runs >= 2 ? n_runs - 2 : n_runs - 1};
      const char* labels[2] = {"first", "next_to_last"};
      for (int which = 0; which < 2; ++which) {
        const AdmmTrace& trace = state.admm_history[picks[which]];

        // Phi* for this subproblem: rerun the same ADMM for 200 iterations.
        SolverState probe;
        probe.x = state.admm_entry_x[picks[which]];
        probe.s = state.admm_entry_s[picks[which]];
        probe.u = data.op.apply(probe.x);
        probe.b.assign(data.op.output_dim(), Complex{0.0, 0.0});
        SolverConfig probe_cfg = cfg;
        probe_cfg.record_traces = false;
        probe_cfg.i_admm = 200;
        probe_cfg.eps_admm = 1e-300;
        admm_solve(probe, data.meas, data.op, probe_cfg);
        double phi_star = std::numeric_limits<double>::infinity();
        for (double phi : probe.phi_trace) phi_star = std::min(phi_star, phi);
        for (double phi : trace.phi) phi_star = std::min(phi_star, phi);

        for (std::size_t it = 0; it < trace.phi.size(); ++it)
          rows.push_back({method_str, mu, labels[which], it, trace.phi[it],
                          trace.phi[it] - phi_star});
      }
    }
  }

  if (!spec.output_dir.empty()) {
    detail::ensure_output_dir(spec.output_dir);
    std::ofstream out(spec.output_dir + "/sweep_mu.csv");
    out << "method,mu,run,iteration,phi,phi_excess\n";
    for (const auto& r : rows)
      out << r.method << ',' << io::format_double(r.mu) << ',' << r.run << ',' << r.iteration
          << ',' << io::format_double(r.phi) << ',' << io::format_double(r.phi_excess) << '\n';
    write_manifest(spec, {}, "mu sweep; phi_star from 200-iteration reruns");
  }
  return rows;
}

BetaTable run_calibrate_beta(const ExperimentSpec& spec) {
  std::vector<double> grid = spec.beta_grid;
  if (grid.empty()) {
    for (int i = 0; i < 20; ++i) grid.push_back(std::pow(10.0, -2.0 + 3.0 * i / 19.0));
  }

  BetaTable table;
  for (const auto& method : spec.methods) {
    for (std::size_t k : spec.k_list) {
      for (std::size_t m : spec.m_list) {
        std::vector<CellSpec> cells;
        for (double beta : grid) cells.push_back({method, k, m, 0, beta});
        const MonteCarloResults results = run_trial_grid(spec, cells);
        const AggregateRow* best = nullptr;
        double best_beta = grid.front();
        for (std::size_t i = 0; i < results.aggregates.size(); ++i) {
          const AggregateRow& agg = results.aggregates[i];
          const double beta = cells[i].beta;
          const bool wins =
              !best || agg.correct_rate > best->correct_rate ||
              (agg.correct_rate == best->correct_rate && agg.mean_psnr_db > best->mean_psnr_db);
          if (wins) {
            best = &agg;
            best_beta = beta;
          }
        }
        table.set(method, k, m, best_beta);
      }
    }
  }

  if (!spec.output_dir.empty()) {
    detail::ensure_output_dir(spec.output_dir);
    table.write_csv(spec.output_dir + "/beta_table.csv");
    write_manifest(spec, {}, "calibration sweep at zero outliers");
  }
  return table;
}

}  // namespace spr
