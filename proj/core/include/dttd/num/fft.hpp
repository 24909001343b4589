#pragma once

#include <vector>

#include "dttd/num/tensor.hpp"

namespace dttd::num {

/// A complex sequence as parallel real/imaginary arrays of equal length.
struct ComplexSeq {
  std::vector<double> real;
  std::vector<double> imag;
};

// Discrete Fourier transform. Power-of-two lengths take the radix-2 fast
// path; other lengths fall back to the direct O(n^2) transform. idft applies
// the 1/n normalization, so idft(dft(x)) == x analytically.
ComplexSeq dft(const ComplexSeq& seq);
ComplexSeq idft(const ComplexSeq& seq);

// Differentiable column transforms over a stacked complex layout: x is
// (2r x c) with rows [0,r) holding real parts and rows [r,2r) imaginary
// parts; each column is one length-r sequence. Gradients go through the
// adjoint transform rather than unrolled butterflies.
Tensor dft_cols(const Tensor& x);
Tensor idft_cols(const Tensor& x);

namespace detail {
// In-place unnormalized transform; inverse=true conjugates the exponent.
void fft_inplace(double* re, double* im, int n, bool inverse);
}  // namespace detail

}  // namespace dttd::num
