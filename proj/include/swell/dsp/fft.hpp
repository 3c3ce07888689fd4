#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "swell/common.hpp"

namespace swell::dsp {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

/// In-place iterative radix-2 Cooley-Tukey. data.size() must be a power of two.
inline void fft_inplace(std::vector<std::complex<double>>& data, bool inverse = false) {
  const std::size_t n = data.size();
  if (n <= 1) return;

  // Bit-reversal reordering.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = data[i + k];
        std::complex<double> v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    for (auto& x : data) x /= static_cast<double>(n);
  }
}

/// DFT of a real signal zero-padded to n_fft, returning bins 0..n_fft/2.
/// Power-of-two sizes go through the FFT; anything else falls back to the
/// direct O(n^2) sum, which is exact for the small frames we deal with.
inline std::vector<std::complex<double>> real_dft(const std::vector<double>& x, std::size_t n_fft) {
  std::vector<std::complex<double>> out(n_fft / 2 + 1);
  if (is_power_of_two(n_fft)) {
    std::vector<std::complex<double>> buf(n_fft, 0.0);
    for (std::size_t i = 0; i < x.size() && i < n_fft; ++i) buf[i] = x[i];
    fft_inplace(buf);
    for (std::size_t k = 0; k <= n_fft / 2; ++k) out[k] = buf[k];
    return out;
  }
  for (std::size_t k = 0; k <= n_fft / 2; ++k) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < x.size() && i < n_fft; ++i) {
      double ang = -2.0 * std::numbers::pi * static_cast<double>(k) * static_cast<double>(i) /
                   static_cast<double>(n_fft);
      re += x[i] * std::cos(ang);
      im += x[i] * std::sin(ang);
    }
    out[k] = {re, im};
  }
  return out;
}

/// Linear cross-correlation c[tau] = sum_j b[j] * a[j + tau] for tau in
/// [0, max_lag], with b.size() <= a.size(). Computed via FFT; the transform
/// size is padded so circular wraparound never touches the requested lags.
inline std::vector<double> cross_correlation(const std::vector<double>& a,
                                             const std::vector<double>& b, std::size_t max_lag) {
  const std::size_t n = next_power_of_two(a.size() + 1);
  std::vector<std::complex<double>> fa(n, 0.0), fb(n, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
  fft_inplace(fa);
  fft_inplace(fb);
  for (std::size_t i = 0; i < n; ++i) fa[i] *= std::conj(fb[i]);
  fft_inplace(fa, true);
  std::vector<double> out(max_lag + 1);
  for (std::size_t tau = 0; tau <= max_lag; ++tau) out[tau] = fa[tau].real();
  return out;
}

}  // namespace swell::dsp
