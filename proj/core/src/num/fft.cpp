#include "dttd/num/fft.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dttd/common/error.hpp"
#include "dttd/num/graph.hpp"

namespace dttd::num {

namespace detail {

namespace {

bool is_pow2(int n) {
  return n > 0 && (n & (n - 1)) == 0;
}

void fft_radix2(double* re, double* im, int n, bool inverse) {
  // Bit-reversal permutation.
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) {
      std::swap(re[i], re[j]);
      std::swap(im[i], im[j]);
    }
  }
  const double sign = inverse ? 1.0 : -1.0;
  for (int len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / len;
    const double wr = std::cos(ang), wi = std::sin(ang);
    for (int i = 0; i < n; i += len) {
      double cr = 1.0, ci = 0.0;
      for (int j = 0; j < len / 2; ++j) {
        const int u = i + j, v = i + j + len / 2;
        const double tr = re[v] * cr - im[v] * ci;
        const double ti = re[v] * ci + im[v] * cr;
        re[v] = re[u] - tr;
        im[v] = im[u] - ti;
        re[u] += tr;
        im[u] += ti;
        const double ncr = cr * wr - ci * wi;
        ci = cr * wi + ci * wr;
        cr = ncr;
      }
    }
  }
}

void dft_direct(double* re, double* im, int n, bool inverse) {
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<double> ore(n, 0.0), oim(n, 0.0);
  for (int k = 0; k < n; ++k) {
    for (int t = 0; t < n; ++t) {
      const double ang = sign * 2.0 * std::numbers::pi * k * t / n;
      const double c = std::cos(ang), s = std::sin(ang);
      ore[k] += re[t] * c - im[t] * s;
      oim[k] += re[t] * s + im[t] * c;
    }
  }
  for (int k = 0; k < n; ++k) {
    re[k] = ore[k];
    im[k] = oim[k];
  }
}

}  // namespace

void fft_inplace(double* re, double* im, int n, bool inverse) {
  if (n == 1) return;
  if (is_pow2(n)) {
    fft_radix2(re, im, n, inverse);
  } else {
    dft_direct(re, im, n, inverse);
  }
}

}  // namespace detail

namespace {

void check_seq(const ComplexSeq& s) {
  if (s.real.size() != s.imag.size()) {
    throw ValidationError("complex sequence has mismatched real/imag lengths " +
                          std::to_string(s.real.size()) + " vs " + std::to_string(s.imag.size()));
  }
  if (s.real.empty()) throw ValidationError("complex sequence must have length >= 1");
}

// Applies the transform column-wise over the stacked (re; im) layout.
std::vector<double> transform_stacked(std::span<const double> x, int r, int c, bool inverse, bool normalize) {
  std::vector<double> out(x.begin(), x.end());
  std::vector<double> re(r), im(r);
  const double norm = normalize ? 1.0 / r : 1.0;
  for (int col = 0; col < c; ++col) {
    for (int i = 0; i < r; ++i) {
      re[i] = out[static_cast<size_t>(i) * c + col];
      im[i] = out[static_cast<size_t>(i + r) * c + col];
    }
    detail::fft_inplace(re.data(), im.data(), r, inverse);
    for (int i = 0; i < r; ++i) {
      out[static_cast<size_t>(i) * c + col] = re[i] * norm;
      out[static_cast<size_t>(i + r) * c + col] = im[i] * norm;
    }
  }
  return out;
}

std::pair<int, int> stacked_dims(const Tensor& x, const char* tag) {
  if (x.shape().size() != 2 || x.rows() % 2 != 0) {
    throw ValidationError(std::string(tag) + ": expected a (2r x c) stacked complex tensor, got " +
                          x.shape_str());
  }
  return {x.rows() / 2, x.cols()};
}

}  // namespace

ComplexSeq dft(const ComplexSeq& seq) {
  check_seq(seq);
  ComplexSeq out = seq;
  detail::fft_inplace(out.real.data(), out.imag.data(), static_cast<int>(out.real.size()), false);
  return out;
}

ComplexSeq idft(const ComplexSeq& seq) {
  check_seq(seq);
  ComplexSeq out = seq;
  const int n = static_cast<int>(out.real.size());
  detail::fft_inplace(out.real.data(), out.imag.data(), n, true);
  for (int i = 0; i < n; ++i) {
    out.real[i] /= n;
    out.imag[i] /= n;
  }
  return out;
}

Tensor dft_cols(const Tensor& x) {
  auto [r, c] = stacked_dims(x, "dft");
  Tensor res = Tensor::from(x.shape(), transform_stacked(x.values(), r, c, false, false));
  if (!x.graph()) return res;
  return x.graph()->record("dft", {x.node()}, std::move(res), [shape = x.shape(), r, c](const Tensor& g) {
    // Adjoint of the forward transform is the unnormalized inverse.
    return std::vector<Tensor>{Tensor::from(shape, transform_stacked(g.values(), r, c, true, false))};
  });
}

Tensor idft_cols(const Tensor& x) {
  auto [r, c] = stacked_dims(x, "idft");
  Tensor res = Tensor::from(x.shape(), transform_stacked(x.values(), r, c, true, true));
  if (!x.graph()) return res;
  return x.graph()->record("idft", {x.node()}, std::move(res), [shape = x.shape(), r, c](const Tensor& g) {
    // Adjoint of (1/r) * inverse kernel is (1/r) * forward kernel.
    std::vector<double> d = transform_stacked(g.values(), r, c, false, false);
    for (double& v : d) v /= r;
    return std::vector<Tensor>{Tensor::from(shape, std::move(d))};
  });
}

}  // namespace dttd::num
