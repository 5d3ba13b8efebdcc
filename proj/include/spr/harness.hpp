#ifndef SPR_HARNESS_HPP
#define SPR_HARNESS_HPP

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "spr/baseline.hpp"
#include "spr/evalkit.hpp"
#include "spr/model.hpp"
#include "spr/solver.hpp"
#include "spr/types.hpp"

namespace spr {

enum class Method { Laplace, Gaussian, L1Fienup };

std::string method_name(Method m);
Method parse_method(const std::string& name);
/// Fixed ordinal used for seed derivation, independent of spec ordering.
std::size_t method_ordinal(Method m);

/// Per-method tuning knobs; zeros mean "use the built-in default".
struct MethodConfig {
  double beta = 0.0;               // 0 -> beta table lookup
  double mu = 0.0;                 // 0 -> default_mu for the geometry
  std::size_t n_inits = 0;         // 0 -> 40 (50 for the Gaussian model)
  std::size_t i_mm = 100;
  std::size_t i_admm = 50;
  std::size_t i_fista = 25;
  double eps_mm = 0.0;
  double eps_admm = 0.0;
  bool adaptive_mu = false;
  double support_threshold = 0.0;  // 0 -> 0.05 (0.2 for the Gaussian model)
  std::size_t fienup_iters = 500;
};

/// Regularization strengths per (method, K, M), with optional linear-in-M
/// interpolation between calibrated cells.
class BetaTable {
 public:
  void set(const std::string& method, std::size_t k, std::size_t m, double beta);
  std::optional<double> lookup(const std::string& method, std::size_t k, std::size_t m) const;

  void load_csv(const std::string& path);
  void write_csv(const std::string& path) const;

  bool interpolate_linear_m = false;

  /// Values obtained with the calibrate-beta sweep at zero outliers.
  static BetaTable builtin_defaults();

 private:
  std::map<std::tuple<std::string, std::size_t, std::size_t>, double> cells_;
};

struct ExperimentSpec {
  std::string kind;  // montecarlo | sweep_beta | sweep_mu | image2d | calibrate_beta
  std::size_t n = 128;
  std::vector<std::size_t> k_list{3};
  std::vector<std::size_t> m_list{128};
  std::vector<std::size_t> outlier_list{0};
  std::size_t n_trials = 50;
  std::vector<std::string> methods{"laplace"};
  std::map<std::string, MethodConfig> method_cfg;
  BetaTable beta_table = BetaTable::builtin_defaults();
  std::uint64_t master_seed = 1;
  std::string output_dir;  // empty -> no files written
  std::size_t threads = 1;

  std::vector<double> beta_grid;
  std::vector<double> mu_grid{0.1, 1.0, 10.0};

  std::string image_path;  // empty -> built-in star phantom
  std::size_t phantom_size = 64;
  std::size_t image_outliers = 10;
  double undersample_factor = 2.0;
};

/// Parses the JSON experiment spec (see docs/formats.md for the schema).
ExperimentSpec load_spec(const std::string& json_path);

struct TrialRow {
  std::string method;
  std::size_t k = 0, m = 0, outliers = 0, trial = 0;
  std::uint64_t data_seed = 0;
  double beta = 0.0;
  bool correct = false;
  double mse = 0.0;
  double psnr_db = 0.0;
  double score = 0.0;  // objective for the solver methods, discrepancy for the baseline
};

struct AggregateRow {
  std::string method;
  std::size_t k = 0, m = 0, outliers = 0, n_trials = 0;
  double correct_rate = 0.0;
  double mean_psnr_db = 0.0;  // infinite trial PSNRs clamp to 100 dB
};

struct MonteCarloResults {
  std::vector<TrialRow> trials;
  std::vector<AggregateRow> aggregates;
};

/// Monte Carlo grid over (K, M, outliers) x trials x methods. Every method of
/// a trial sees the identical MeasurementSet; the per-trial data seed is
/// derive(derive(derive(derive(master, k), m), outliers), trial).
MonteCarloResults run_montecarlo(const ExperimentSpec& spec);

/// Correctness/PSNR versus beta per sparsity level at fixed M.
MonteCarloResults run_sweep_beta(const ExperimentSpec& spec);

struct MuTraceRow {
  std::string method;
  double mu = 0.0;
  std::string run;  // "first" or "next_to_last"
  std::size_t iteration = 0;
  double phi = 0.0;
  double phi_excess = 0.0;  // phi - phi_star(200-iteration estimate)
};

/// Surrogate convergence traces of the first and next-to-last ADMM runs for
/// each penalty value.
std::vector<MuTraceRow> run_sweep_mu(const ExperimentSpec& spec);

struct Phantom2D {
  ComplexVector image;  // row-major, real nonnegative
  IndexVector support;
  std::size_t n1 = 0, n2 = 0;
};

/// Star-of-David dot pattern: single-pixel dots along the edges of two
/// overlapping triangles, amplitudes uniform on [0.5, 1].
Phantom2D generate_star_phantom(std::size_t size, std::uint64_t seed);

struct Image2dRow {
  std::string method;
  double beta = 0.0;
  double mse = 0.0;
  double psnr_db = 0.0;
  double support_f1 = 0.0;
  bool correct = false;
};

struct Image2dResults {
  std::vector<Image2dRow> rows;
  std::map<std::string, ComplexVector> reconstructions;
  Phantom2D truth;
  std::size_t m = 0;
};

/// Undersampled 2D reconstruction of a PGM image or the built-in phantom.
Image2dResults run_image2d(const ExperimentSpec& spec);

/// Calibration sweep at zero outliers; returns the winning beta per
/// (method, K, M) cell and optionally caches it as CSV in output_dir.
BetaTable run_calibrate_beta(const ExperimentSpec& spec);

}  // namespace spr

#endif  // SPR_HARNESS_HPP
