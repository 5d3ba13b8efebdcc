#include "spr/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spr::io {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

std::ofstream open_output(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_signal_csv(const std::string& path, const ComplexVector& x) {
  auto out = open_output(path);
  out << "index,real,imag\n";
  for (std::size_t n = 0; n < x.size(); ++n)
    out << n << ',' << format_double(x[n].real()) << ',' << format_double(x[n].imag()) << '\n';
}

ComplexVector read_signal_csv(const std::string& path) {
  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty signal file");
  ComplexVector x;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) throw std::runtime_error(path + ": malformed signal row");
    x.emplace_back(std::stod(fields[1]), std::stod(fields[2]));
  }
  return x;
}

void write_measurements_csv(const std::string& path, const MeasurementSet& meas) {
  auto out = open_output(path);
  out << "index,freq_index,y,is_outlier\n";
  for (std::size_t m = 0; m < meas.y.size(); ++m) {
    const bool outlier = std::binary_search(meas.outlier_indices.begin(),
                                            meas.outlier_indices.end(), m);
    out << m << ',' << meas.mask[m] << ',' << format_double(meas.y[m]) << ','
        << (outlier ? 1 : 0) << '\n';
  }
}

MeasurementSet read_measurements_csv(const std::string& path) {
  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty measurement file");
  MeasurementSet meas;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 4) throw std::runtime_error(path + ": malformed measurement row");
    meas.mask.push_back(std::stoul(fields[1]));
    meas.y.push_back(std::stod(fields[2]));
    if (std::stoi(fields[3]) != 0) meas.outlier_indices.push_back(meas.y.size() - 1);
  }
  return meas;
}

void write_trace_csv(const std::string& path, const SolverState& state) {
  auto out = open_output(path);
  out << "outer_iter,inner_iter,psi,phi,primal_res,dual_res\n";
  for (std::size_t outer = 0; outer < state.admm_history.size(); ++outer) {
    const AdmmTrace& t = state.admm_history[outer];
    for (std::size_t inner = 0; inner < t.phi.size(); ++inner) {
      out << outer << ',' << inner << ',' << format_double(t.psi[inner]) << ','
          << format_double(t.phi[inner]) << ',' << format_double(t.primal_res[inner]) << ','
          << format_double(t.dual_res[inner]) << '\n';
    }
  }
}

PgmImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);

  auto next_token = [&in, &path]() -> std::string {
    std::string tok;
    while (in >> tok) {
      if (tok[0] == '#') {
        std::string rest;
        std::getline(in, rest);
        continue;
      }
      return tok;
    }
    throw std::runtime_error(path + ": truncated PGM header");
  };

  const std::string magic = next_token();
  if (magic != "P5") throw std::runtime_error(path + ": not a binary grayscale PGM");
  const std::size_t cols = std::stoul(next_token());
  const std::size_t rows = std::stoul(next_token());
  const int maxval = std::stoi(next_token());
  if (maxval <= 0 || maxval > 65535) throw std::runtime_error(path + ": bad maxval");
  in.get();  // single whitespace after maxval

  PgmImage img;
  img.rows = rows;
  img.cols = cols;
  img.maxval = maxval;
  img.pixels.resize(rows * cols);
  const bool wide = maxval > 255;
  std::vector<unsigned char> raw(rows * cols * (wide ? 2 : 1));
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size())
    throw std::runtime_error(path + ": truncated PGM data");
  for (std::size_t i = 0; i < rows * cols; ++i) {
    img.pixels[i] = wide ? static_cast<double>((raw[2 * i] << 8) | raw[2 * i + 1])
                         : static_cast<double>(raw[i]);
  }
  return img;
}

void write_pgm(const std::string& path, const PgmImage& image) {
  if (image.pixels.size() != image.rows * image.cols)
    throw std::invalid_argument("write_pgm: pixel buffer size mismatch");
  auto out = open_output(path, std::ios::binary);
  out << "P5\n" << image.cols << ' ' << image.rows << '\n' << image.maxval << '\n';
  const bool wide = image.maxval > 255;
  for (double p : image.pixels) {
    long v = std::lround(std::min(std::max(p, 0.0), static_cast<double>(image.maxval)));
    if (wide) {
      const unsigned char hi = static_cast<unsigned char>((v >> 8) & 0xFF);
      const unsigned char lo = static_cast<unsigned char>(v & 0xFF);
      out.put(static_cast<char>(hi));
      out.put(static_cast<char>(lo));
    } else {
      out.put(static_cast<char>(static_cast<unsigned char>(v)));
    }
  }
}

}  // namespace spr::io
