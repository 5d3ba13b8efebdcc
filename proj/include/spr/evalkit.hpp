#ifndef SPR_EVALKIT_HPP
#define SPR_EVALKIT_HPP

#include "spr/types.hpp"

namespace spr {

/// Alignment of a candidate against the truth over the ambiguities a
/// magnitude spectrum cannot see: circular shift, reversal (both the
/// conjugated and plain conventions are searched), and global phase.
struct Alignment {
  ComplexVector aligned;
  long shift0 = 0;  // row shift (the only shift in 1D)
  long shift1 = 0;  // column shift, 2D only
  bool reversed = false;
  Complex phase{1.0, 0.0};
};

struct EvalReport {
  bool correct = false;
  double mse = 0.0;
  double psnr_db = 0.0;  // +inf when mse == 0
  long shift0 = 0;
  long shift1 = 0;
  bool reversed = false;
  Complex global_phase{1.0, 0.0};
};

/// Best circular shift and reversal by FFT cross-correlation, then the
/// closed-form global phase. aligned[n] = phase * v[(n + shift0) mod N] where
/// v is x_hat or its (conjugate-)reversal.
Alignment align_candidate(const ComplexVector& x_hat, const ComplexVector& x_true);

/// Same search over a row-major n1 x n2 grid: 2D circular shifts and the
/// two-axis flip (index negation modulo the grid on both axes).
Alignment align_candidate_2d(const ComplexVector& x_hat, const ComplexVector& x_true,
                             std::size_t n1, std::size_t n2);

/// Indices with |x_n| > threshold (0-based).
IndexVector detect_support(const ComplexVector& x, double threshold);

/// Align, then compare supports and compute MSE / PSNR against a unit peak.
EvalReport evaluate(const ComplexVector& x_hat, const ComplexVector& x_true,
                    double threshold);

EvalReport evaluate_2d(const ComplexVector& x_hat, const ComplexVector& x_true,
                       std::size_t n1, std::size_t n2, double threshold);

/// F1 score between a detected and a true support set.
double support_f1(const IndexVector& detected, const IndexVector& truth);

}  // namespace spr

#endif  // SPR_EVALKIT_HPP
