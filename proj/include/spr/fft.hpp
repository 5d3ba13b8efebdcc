#ifndef SPR_FFT_HPP
#define SPR_FFT_HPP

#include "spr/types.hpp"

namespace spr::fft {

/// Unitary 1D DFT: out_k = (1/sqrt(N)) sum_n in_n e^{-2*pi*i*k*n/N}.
ComplexVector forward(const ComplexVector& in);

/// Unitary inverse 1D DFT (the adjoint of forward).
ComplexVector inverse(const ComplexVector& in);

/// Unitary 2D DFT of a row-major n1 x n2 grid.
ComplexVector forward2d(const ComplexVector& in, std::size_t n1, std::size_t n2);

ComplexVector inverse2d(const ComplexVector& in, std::size_t n1, std::size_t n2);

}  // namespace spr::fft

#endif  // SPR_FFT_HPP
