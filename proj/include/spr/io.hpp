#ifndef SPR_IO_HPP
#define SPR_IO_HPP

#include <string>

#include "spr/model.hpp"
#include "spr/solver.hpp"
#include "spr/types.hpp"

namespace spr::io {

/// Floats in every CSV are written with 17 significant digits so parsed
/// values round-trip bit-exactly.
std::string format_double(double v);

/// Signal CSV, header `index,real,imag`.
void write_signal_csv(const std::string& path, const ComplexVector& x);
ComplexVector read_signal_csv(const std::string& path);

/// Measurement CSV, header `index,freq_index,y,is_outlier`.
void write_measurements_csv(const std::string& path, const MeasurementSet& meas);
MeasurementSet read_measurements_csv(const std::string& path);

/// Solver trace CSV, header `outer_iter,inner_iter,psi,phi,primal_res,dual_res`
/// (requires a state produced with record_traces set).
void write_trace_csv(const std::string& path, const SolverState& state);

/// Grayscale PGM (binary P5), 8- or 16-bit.
struct PgmImage {
  std::size_t rows = 0;
  std::size_t cols = 0;
  int maxval = 255;
  RealVector pixels;  // row-major, in [0, maxval]
};

PgmImage read_pgm(const std::string& path);
void write_pgm(const std::string& path, const PgmImage& image);

}  // namespace spr::io

#endif  // SPR_IO_HPP
