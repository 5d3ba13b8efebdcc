#ifndef SPR_TYPES_HPP
#define SPR_TYPES_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace spr {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using RealVector = std::vector<double>;
using IndexVector = std::vector<std::size_t>;

inline double norm2_sq(const ComplexVector& v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return acc;
}

inline double norm2(const ComplexVector& v) { return std::sqrt(norm2_sq(v)); }

inline double norm1(const ComplexVector& v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::abs(z);
  return acc;
}

/// <a, b> = sum_n a_n * conj(b_n)
inline Complex inner(const ComplexVector& a, const ComplexVector& b) {
  Complex acc{0.0, 0.0};
  for (std::size_t n = 0; n < a.size(); ++n) acc += a[n] * std::conj(b[n]);
  return acc;
}

inline double dist2(const ComplexVector& a, const ComplexVector& b) {
  double acc = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) acc += std::norm(a[n] - b[n]);
  return std::sqrt(acc);
}

}  // namespace spr

#endif  // SPR_TYPES_HPP
