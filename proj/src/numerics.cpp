#include "spr/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spr/rng.hpp"

namespace spr {
namespace {

bool all_finite(const double* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(c[i])) return false;
  return true;
}

double poly_eval(const double* c, std::size_t n, double x) {
  double v = 0.0;
  for (std::size_t i = 0; i < n; ++i) v = v * x + c[i];
  return v;
}

double poly_deriv_eval(const double* c, std::size_t n, double x) {
  double v = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double k = static_cast<double>(n - 1 - i);
    v = v * x + k * c[i];
  }
  return v;
}

// A few guarded Newton steps; analytic forms lose digits under cancellation
// and this restores them.
double polish(const double* c, std::size_t n, double x) {
  for (int it = 0; it < 3; ++it) {
    const double f = poly_eval(c, n, x);
    const double df = poly_deriv_eval(c, n, x);
    if (df == 0.0) break;
    const double step = f / df;
    const double xn = x - step;
    if (!std::isfinite(xn)) break;
    if (std::abs(poly_eval(c, n, xn)) >= std::abs(f)) break;
    x = xn;
  }
  return x;
}

void dedupe_roots(RealVector& roots) {
  std::sort(roots.begin(), roots.end());
  RealVector out;
  for (double r : roots) {
    if (!out.empty() &&
        std::abs(r - out.back()) < 1e-7 * std::max({1.0, std::abs(r), std::abs(out.back())}))
      continue;
    out.push_back(r);
  }
  roots = std::move(out);
}

RealVector roots_linear(double a, double b) {
  if (a == 0.0) {
    if (b == 0.0) throw std::invalid_argument("identically zero polynomial");
    return {};
  }
  return {-b / a};
}

RealVector roots_quadratic(double a, double b, double c) {
  if (a == 0.0) return roots_linear(b, c);
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return {};
  if (disc == 0.0) return {-b / (2.0 * a)};
  // Citardauq form of the stable quadratic formula.
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b == 0.0 ? 1.0 : b));
  RealVector out{q / a};
  if (q != 0.0) out.push_back(c / q);
  return out;
}

// Real roots of a monic depressed-free cubic x^3 + a2 x^2 + a1 x + a0.
RealVector roots_cubic_normalized(double a2, double a1, double a0) {
  const double q = (a2 * a2 - 3.0 * a1) / 9.0;
  const double r = (2.0 * a2 * a2 * a2 - 9.0 * a2 * a1 + 27.0 * a0) / 54.0;
  const double q3 = q * q * q;
  RealVector out;
  if (r * r < q3) {
    // Three real roots, trigonometric form.
    double ratio = r / std::sqrt(q3);
    ratio = std::clamp(ratio, -1.0, 1.0);
    const double theta = std::acos(ratio);
    const double m = -2.0 * std::sqrt(q);
    out.push_back(m * std::cos(theta / 3.0) - a2 / 3.0);
    out.push_back(m * std::cos((theta + 2.0 * M_PI) / 3.0) - a2 / 3.0);
    out.push_back(m * std::cos((theta - 2.0 * M_PI) / 3.0) - a2 / 3.0);
  } else {
    const double mag = std::abs(r) + std::sqrt(std::max(0.0, r * r - q3));
    double a = -std::cbrt(mag);
    if (r < 0.0) a = -a;
    const double b = (a == 0.0) ? 0.0 : q / a;
    out.push_back((a + b) - a2 / 3.0);
    if (a == b) {
      // Repeated real pair at the fold point.
      out.push_back(-0.5 * (a + b) - a2 / 3.0);
    }
  }
  return out;
}

}  // namespace

RealVector real_roots_cubic(const CubicCoeffs& c) {
  if (!all_finite(c.data(), 4)) throw std::invalid_argument("nonfinite cubic coefficients");
  if (c[0] == 0.0) {
    RealVector out = roots_quadratic(c[1], c[2], c[3]);
    dedupe_roots(out);
    return out;
  }
  RealVector out = roots_cubic_normalized(c[1] / c[0], c[2] / c[0], c[3] / c[0]);
  for (double& r : out) r = polish(c.data(), 4, r);
  dedupe_roots(out);
  return out;
}

RealVector real_roots_quartic(const QuarticCoeffs& c) {
  if (!all_finite(c.data(), 5)) throw std::invalid_argument("nonfinite quartic coefficients");
  if (c[0] == 0.0) return real_roots_cubic({c[1], c[2], c[3], c[4]});

  const double scale = std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2]),
                                 std::abs(c[3]), std::abs(c[4])});
  // Depress: x = y - b/4 turns it into y^4 + p y^2 + q y + r.
  const double b = c[1] / c[0];
  const double cc = c[2] / c[0];
  const double d = c[3] / c[0];
  const double e = c[4] / c[0];
  const double b2 = b * b;
  const double p = cc - 0.375 * b2;
  const double q = d - 0.5 * b * cc + 0.125 * b2 * b;
  const double r = e - 0.25 * b * d + 0.0625 * b2 * cc - (3.0 / 256.0) * b2 * b2;

  RealVector yroots;
  if (q == 0.0) {
    // Biquadratic: y^2 solves a plain quadratic.
    for (double u : roots_quadratic(1.0, p, r)) {
      if (u < 0.0) continue;
      const double s = std::sqrt(u);
      yroots.push_back(s);
      yroots.push_back(-s);
    }
  } else {
    // Ferrari via the resolvent cubic z^3 + 2p z^2 + (p^2 - 4r) z - q^2;
    // it always has a nonnegative real root (value at z=0 is -q^2).
    RealVector zs = roots_cubic_normalized(2.0 * p, p * p - 4.0 * r, -q * q);
    double z = *std::max_element(zs.begin(), zs.end());
    z = std::max(z, 0.0);
    const double w = std::sqrt(z);
    if (w == 0.0) {
      // q != 0 forces z > 0 analytically; landing here means r, p conspired
      // to underflow, fall back to the biquadratic approximation.
      for (double u : roots_quadratic(1.0, p, r)) {
        if (u < 0.0) continue;
        const double s = std::sqrt(u);
        yroots.push_back(s);
        yroots.push_back(-s);
      }
    } else {
      const double m = 0.5 * (p + z - q / w);
      const double n = 0.5 * (p + z + q / w);
      for (double y : roots_quadratic(1.0, w, m)) yroots.push_back(y);
      for (double y : roots_quadratic(1.0, -w, n)) yroots.push_back(y);
    }
  }

  RealVector out;
  for (double y : yroots) {
    double x = polish(c.data(), 5, y - 0.25 * b);
    const double tol = 1e-9 * scale * std::pow(std::max(1.0, std::abs(x)), 3.0);
    if (std::abs(poly_eval(c.data(), 5, x)) <= tol) out.push_back(x);
  }
  dedupe_roots(out);
  return out;
}

SpectralNormEstimate spectral_norm(const LinearMap& op, std::size_t max_iters, double tol) {
  ComplexVector v(op.input_dim);
  Rng rng(0x5eedULL);
  for (auto& z : v) z = rng.complex_normal(1.0);
  double nv = norm2(v);
  if (nv == 0.0 || op.input_dim == 0) return {0.0, true};
  for (auto& z : v) z /= nv;

  double sigma = 0.0;
  for (std::size_t it = 0; it < max_iters; ++it) {
    ComplexVector w = op.adjoint(op.apply(v));
    const double lambda = norm2(w);
    if (lambda == 0.0) return {0.0, true};
    const double sigma_new = std::sqrt(lambda);
    for (auto& z : w) z /= lambda;
    v = std::move(w);
    if (it > 0 && std::abs(sigma_new - sigma) <= tol * sigma_new) {
      return {sigma_new, true};
    }
    sigma = sigma_new;
  }
  return {sigma * 1.05, false};
}

}  // namespace spr
