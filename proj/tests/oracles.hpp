#ifndef SPR_TEST_ORACLES_HPP
#define SPR_TEST_ORACLES_HPP

// Independent reference implementations used only by tests. Everything here
// deliberately avoids the library's solver code paths: roots come from
// companion-matrix eigenvalues, scalar prox minimizers from a dense grid with
// pattern-search refinement, DFTs from the O(N^2) sum.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "spr/types.hpp"

namespace spr::testing {

/// Real eigenvalues of the companion matrix of the polynomial with the given
/// descending-order coefficients; |imag| <= 1e-8 * max(1, |lambda|) counts as
/// real. Duplicates within 1e-7 * max(1, |r|) collapse.
inline std::vector<double> companion_real_roots(std::vector<double> coeffs) {
  while (coeffs.size() > 1 && coeffs.front() == 0.0) coeffs.erase(coeffs.begin());
  const std::size_t deg = coeffs.size() - 1;
  if (deg == 0) return {};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (std::size_t i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < deg; ++i)
    companion(i, deg - 1) = -coeffs[deg - i] / coeffs[0];

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  std::vector<double> roots;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const std::complex<double> lambda = solver.eigenvalues()[i];
    if (std::abs(lambda.imag()) <= 1e-8 * std::max(1.0, std::abs(lambda)))
      roots.push_back(lambda.real());
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double r : roots) {
    if (!out.empty() && std::abs(r - out.back()) < 1e-7 * std::max({1.0, std::abs(r), std::abs(out.back())}))
      continue;
    out.push_back(r);
  }
  return out;
}

/// Scalar objective of the per-measurement subproblem, written straight from
/// the piecewise definition (not by calling the library).
inline double scalar_prox_objective(int p, double y, Complex s, Complex d, double mu, Complex u) {
  const double h_plus = std::norm(u) - y;
  double val;
  if (y <= 0.0) {
    val = h_plus;
  } else {
    Complex s_used = s;
    if (std::norm(s) >= y) {
      const double mag = std::abs(s);
      s_used = mag > 0.0 ? std::sqrt(y) * (s / mag) : Complex{std::sqrt(y), 0.0};
    }
    const double tangent = y + std::norm(s_used) - 2.0 * (u * std::conj(s_used)).real();
    val = std::max(h_plus, tangent);
  }
  const double fit = p == 2 ? val * val : val;
  return fit + 0.5 * mu * std::norm(u - d);
}

struct GridOracleResult {
  Complex u;
  double objective;
};

/// Dense grid over the disk |u| <= 3(sqrt(y) + |s| + |d|), then pattern-search
/// refinement of the best grid point down to step 1e-8.
inline GridOracleResult grid_prox_oracle(int p, double y, Complex s, Complex d, double mu,
                                         double step = 1e-2) {
  const double radius = 3.0 * (std::sqrt(std::max(y, 0.0)) + std::abs(s) + std::abs(d)) + 0.25;
  const int half = static_cast<int>(std::ceil(radius / step));

  const double dr = d.real(), di = d.imag();
  double s_used_re, s_used_im, b0 = 0.0;
  bool concaved = y > 0.0;
  {
    Complex s_used = s;
    if (y > 0.0 && std::norm(s) >= y) {
      const double mag = std::abs(s);
      s_used = mag > 0.0 ? std::sqrt(y) * (s / mag) : Complex{std::sqrt(y), 0.0};
    }
    s_used_re = 2.0 * s_used.real();
    s_used_im = 2.0 * s_used.imag();
    b0 = y + std::norm(s_used);
  }
  const double half_mu = 0.5 * mu;

  double best_obj = std::numeric_limits<double>::infinity();
  double best_re = 0.0, best_im = 0.0;
  for (int i = -half; i <= half; ++i) {
    const double re = i * step;
    const double dre = re - dr;
    for (int j = -half; j <= half; ++j) {
      const double im = j * step;
      const double dim = im - di;
      const double quad = half_mu * (dre * dre + dim * dim);
      const double h_plus = re * re + im * im - y;
      double val = h_plus;
      if (concaved) {
        const double tangent = b0 - s_used_re * re - s_used_im * im;
        if (tangent > val) val = tangent;
      }
      const double obj = (p == 2 ? val * val : val) + quad;
      if (obj < best_obj) {
        best_obj = obj;
        best_re = re;
        best_im = im;
      }
    }
  }

  // Compass-pattern refinement.
  double h = step;
  Complex u{best_re, best_im};
  double obj = scalar_prox_objective(p, y, s, d, mu, u);
  while (h > 1e-8) {
    bool improved = false;
    const Complex moves[4] = {{h, 0.0}, {-h, 0.0}, {0.0, h}, {0.0, -h}};
    for (const Complex& m : moves) {
      const Complex cand = u + m;
      const double cand_obj = scalar_prox_objective(p, y, s, d, mu, cand);
      if (cand_obj < obj) {
        obj = cand_obj;
        u = cand;
        improved = true;
      }
    }
    if (!improved) h *= 0.5;
  }
  return {u, obj};
}

/// Direct O(N^2) unitary DFT.
inline ComplexVector reference_dft(const ComplexVector& x) {
  const std::size_t n = x.size();
  ComplexVector out(n, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j)
      acc += x[j] * std::polar(1.0, -2.0 * M_PI * static_cast<double>(k * j) / n);
    out[k] = acc / std::sqrt(static_cast<double>(n));
  }
  return out;
}

}  // namespace spr::testing

#endif  // SPR_TEST_ORACLES_HPP
