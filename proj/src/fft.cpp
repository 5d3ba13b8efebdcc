#include "spr/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace spr::fft {
namespace {

// Plans are cached per (size, direction). FFTW's planner is not thread-safe,
// so creation is serialized; fftw_execute_dft on a cached plan is reentrant.
// Plans are created in-place with FFTW_UNALIGNED so they can be executed on
// any caller-owned buffer.
std::mutex planner_mutex;

fftw_plan plan_1d(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(planner_mutex);
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  ComplexVector buf(static_cast<std::size_t>(n));
  auto* raw = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan p = fftw_plan_dft_1d(n, raw, raw, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw std::runtime_error("fftw_plan_dft_1d failed");
  cache.emplace(key, p);
  return p;
}

fftw_plan plan_2d(int n1, int n2, int sign) {
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(planner_mutex);
  auto key = std::make_tuple(n1, n2, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  ComplexVector buf(static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2));
  auto* raw = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan p = fftw_plan_dft_2d(n1, n2, raw, raw, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw std::runtime_error("fftw_plan_dft_2d failed");
  cache.emplace(key, p);
  return p;
}

ComplexVector run_1d(const ComplexVector& in, int sign) {
  ComplexVector out = in;
  if (out.empty()) return out;
  fftw_plan p = plan_1d(static_cast<int>(out.size()), sign);
  auto* raw = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(p, raw, raw);
  const double scale = 1.0 / std::sqrt(static_cast<double>(out.size()));
  for (auto& z : out) z *= scale;
  return out;
}

ComplexVector run_2d(const ComplexVector& in, std::size_t n1, std::size_t n2, int sign) {
  if (in.size() != n1 * n2) throw std::invalid_argument("fft2d: size mismatch");
  ComplexVector out = in;
  if (out.empty()) return out;
  fftw_plan p = plan_2d(static_cast<int>(n1), static_cast<int>(n2), sign);
  auto* raw = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(p, raw, raw);
  const double scale = 1.0 / std::sqrt(static_cast<double>(out.size()));
  for (auto& z : out) z *= scale;
  return out;
}

}  // namespace

ComplexVector forward(const ComplexVector& in) { return run_1d(in, FFTW_FORWARD); }

ComplexVector inverse(const ComplexVector& in) { return run_1d(in, FFTW_BACKWARD); }

ComplexVector forward2d(const ComplexVector& in, std::size_t n1, std::size_t n2) {
  return run_2d(in, n1, n2, FFTW_FORWARD);
}

ComplexVector inverse2d(const ComplexVector& in, std::size_t n1, std::size_t n2) {
  return run_2d(in, n1, n2, FFTW_BACKWARD);
}

}  // namespace spr::fft
