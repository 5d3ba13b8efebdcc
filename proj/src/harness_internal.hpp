#ifndef SPR_HARNESS_INTERNAL_HPP
#define SPR_HARNESS_INTERNAL_HPP

#include <cstdint>
#include <string>

#include "spr/harness.hpp"
#include "spr/model.hpp"
#include "spr/rng.hpp"

namespace spr::detail {

struct TrialData {
  SparseSignal signal;
  SensingOperator op;
  MeasurementSet meas;
};

inline std::uint64_t trial_data_seed(std::uint64_t master, std::size_t k, std::size_t m,
                                     std::size_t outliers, std::size_t trial) {
  return derive_seed(derive_seed(derive_seed(derive_seed(master, k), m), outliers), trial);
}

inline TrialData make_trial_data(std::size_t n, std::size_t k, std::size_t m,
                                 std::size_t outliers, std::uint64_t data_seed) {
  TrialData data{generate_sparse_signal(n, k, derive_seed(data_seed, 0)),
                 SensingOperator::masked_dft(n, draw_frequency_mask(n, m, derive_seed(data_seed, 1))),
                 {}};
  data.meas = simulate_measurements(data.signal, data.op, 2.0);
  if (outliers > 0) data.meas = inject_outliers(data.meas, outliers, derive_seed(data_seed, 2));
  return data;
}

struct MethodOutcome {
  ComplexVector x;
  double score = 0.0;
};

MethodOutcome run_one_method(Method method, const MeasurementSet& meas,
                             const SensingOperator& op, double beta, const MethodConfig& mcfg,
                             std::uint64_t seed, bool two_dimensional);

double method_support_threshold(Method method, const MethodConfig& mcfg);

MethodConfig spec_method_cfg(const ExperimentSpec& spec, const std::string& name);

/// Resolves beta for a cell: explicit per-method value wins, then the table.
/// Throws listing every unresolvable cell.
double resolve_beta(const ExperimentSpec& spec, const std::string& method, std::size_t k,
                    std::size_t m);

void ensure_output_dir(const std::string& dir);

}  // namespace spr::detail

#endif  // SPR_HARNESS_INTERNAL_HPP
