#include "spr/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spr/fft.hpp"
#include "spr/numerics.hpp"

namespace spr {
namespace {

ComplexVector reverse_circular(const ComplexVector& x, bool conjugate) {
  const std::size_t n = x.size();
  ComplexVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex v = x[(n - i) % n];
    out[i] = conjugate ? std::conj(v) : v;
  }
  return out;
}

ComplexVector flip2d(const ComplexVector& x, std::size_t n1, std::size_t n2, bool conjugate) {
  ComplexVector out(x.size());
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      const Complex v = x[((n1 - i) % n1) * n2 + (n2 - j) % n2];
      out[i * n2 + j] = conjugate ? std::conj(v) : v;
    }
  return out;
}

ComplexVector shift_circular(const ComplexVector& x, long shift) {
  const long n = static_cast<long>(x.size());
  ComplexVector out(x.size());
  for (long i = 0; i < n; ++i) out[i] = x[((i + shift) % n + n) % n];
  return out;
}

ComplexVector shift_circular_2d(const ComplexVector& x, std::size_t n1, std::size_t n2,
                                long s0, long s1) {
  const long r = static_cast<long>(n1), c = static_cast<long>(n2);
  ComplexVector out(x.size());
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < c; ++j)
      out[i * c + j] = x[(((i + s0) % r + r) % r) * c + ((j + s1) % c + c) % c];
  return out;
}

/// <x_true, shifted v> for every shift at once; entry sigma equals
/// conj(corr[sigma]) up to a positive constant, which is all the argmax and
/// the phase estimate need.
ComplexVector correlation_table(const ComplexVector& v, const ComplexVector& g_true) {
  ComplexVector prod = fft::forward(v);
  for (std::size_t k = 0; k < prod.size(); ++k) prod[k] *= std::conj(g_true[k]);
  return fft::inverse(prod);
}

ComplexVector correlation_table_2d(const ComplexVector& v, const ComplexVector& g_true,
                                   std::size_t n1, std::size_t n2) {
  ComplexVector prod = fft::forward2d(v, n1, n2);
  for (std::size_t k = 0; k < prod.size(); ++k) prod[k] *= std::conj(g_true[k]);
  return fft::inverse2d(prod, n1, n2);
}

}  // namespace

Alignment align_candidate(const ComplexVector& x_hat, const ComplexVector& x_true) {
  if (x_hat.size() != x_true.size())
    throw std::invalid_argument("align_candidate: length mismatch");
  Alignment best;
  best.aligned = x_hat;
  if (norm2_sq(x_true) == 0.0 || x_hat.empty()) return best;

  const ComplexVector g_true = fft::forward(x_true);
  double best_peak = -1.0;
  Complex best_corr{1.0, 0.0};
  const ComplexVector* best_variant = nullptr;
  ComplexVector variants[3] = {x_hat, reverse_circular(x_hat, true),
                               reverse_circular(x_hat, false)};
  for (int variant = 0; variant < 3; ++variant) {
    const ComplexVector table = correlation_table(variants[variant], g_true);
    for (std::size_t sigma = 0; sigma < table.size(); ++sigma) {
      const double peak = std::abs(table[sigma]);
      if (peak > best_peak) {
        best_peak = peak;
        best_corr = std::conj(table[sigma]);
        best.shift0 = static_cast<long>(sigma);
        best.reversed = variant != 0;
        best_variant = &variants[variant];
      }
    }
  }

  best.phase = unit_phase(best_corr);
  best.aligned = shift_circular(*best_variant, best.shift0);
  for (auto& z : best.aligned) z *= best.phase;
  return best;
}

Alignment align_candidate_2d(const ComplexVector& x_hat, const ComplexVector& x_true,
                             std::size_t n1, std::size_t n2) {
  if (x_hat.size() != x_true.size() || x_hat.size() != n1 * n2)
    throw std::invalid_argument("align_candidate_2d: size mismatch");
  Alignment best;
  best.aligned = x_hat;
  if (norm2_sq(x_true) == 0.0 || x_hat.empty()) return best;

  const ComplexVector g_true = fft::forward2d(x_true, n1, n2);
  double best_peak = -1.0;
  Complex best_corr{1.0, 0.0};
  const ComplexVector* best_variant = nullptr;
  ComplexVector variants[3] = {x_hat, flip2d(x_hat, n1, n2, true), flip2d(x_hat, n1, n2, false)};
  for (int variant = 0; variant < 3; ++variant) {
    const ComplexVector table = correlation_table_2d(variants[variant], g_true, n1, n2);
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
      const double peak = std::abs(table[idx]);
      if (peak > best_peak) {
        best_peak = peak;
        best_corr = std::conj(table[idx]);
        best.shift0 = static_cast<long>(idx / n2);
        best.shift1 = static_cast<long>(idx % n2);
        best.reversed = variant != 0;
        best_variant = &variants[variant];
      }
    }
  }

  best.phase = unit_phase(best_corr);
  best.aligned = shift_circular_2d(*best_variant, n1, n2, best.shift0, best.shift1);
  for (auto& z : best.aligned) z *= best.phase;
  return best;
}

IndexVector detect_support(const ComplexVector& x, double threshold) {
  if (threshold < 0.0) throw std::invalid_argument("detect_support: negative threshold");
  IndexVector out;
  for (std::size_t n = 0; n < x.size(); ++n)
    if (std::abs(x[n]) > threshold) out.push_back(n);
  return out;
}

namespace {

EvalReport report_from_alignment(const Alignment& alignment, const ComplexVector& x_true,
                                 double threshold) {
  EvalReport report;
  report.shift0 = alignment.shift0;
  report.shift1 = alignment.shift1;
  report.reversed = alignment.reversed;
  report.global_phase = alignment.phase;

  IndexVector true_support;
  for (std::size_t n = 0; n < x_true.size(); ++n)
    if (x_true[n] != Complex{0.0, 0.0}) true_support.push_back(n);
  report.correct = detect_support(alignment.aligned, threshold) == true_support;

  const std::size_t n = std::max<std::size_t>(1, x_true.size());
  double err = 0.0;
  for (std::size_t i = 0; i < x_true.size(); ++i) err += std::norm(alignment.aligned[i] - x_true[i]);
  report.mse = err / static_cast<double>(n);
  report.psnr_db = report.mse > 0.0 ? 10.0 * std::log10(1.0 / report.mse)
                                    : std::numeric_limits<double>::infinity();
  return report;
}

}  // namespace

EvalReport evaluate(const ComplexVector& x_hat, const ComplexVector& x_true, double threshold) {
  return report_from_alignment(align_candidate(x_hat, x_true), x_true, threshold);
}

EvalReport evaluate_2d(const ComplexVector& x_hat, const ComplexVector& x_true,
                       std::size_t n1, std::size_t n2, double threshold) {
  return report_from_alignment(align_candidate_2d(x_hat, x_true, n1, n2), x_true, threshold);
}

double support_f1(const IndexVector& detected, const IndexVector& truth) {
  if (detected.empty() && truth.empty()) return 1.0;
  std::size_t hits = 0;
  for (std::size_t idx : detected)
    if (std::binary_search(truth.begin(), truth.end(), idx)) ++hits;
  const double precision = detected.empty() ? 0.0 : static_cast<double>(hits) / detected.size();
  const double recall = truth.empty() ? 0.0 : static_cast<double>(hits) / truth.size();
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace spr
