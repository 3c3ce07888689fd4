#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "swell/common.hpp"
#include "swell/dsp/spectrogram.hpp"

namespace swell::dsp {

constexpr double kLogFloor = 1e-10;

/// HTK mel scale.
inline double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
inline double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

/// Triangular mel filterbank, n_mels x n_bins. Band i is the triangle with
/// feet at mel points i and i+2 and apex at i+1, points evenly spaced in mel
/// between fmin = 0 and fmax = sr/2, evaluated at each bin's frequency.
inline Mat mel_filterbank(std::size_t n_mels, std::size_t n_fft, int sample_rate) {
  const std::size_t n_bins = n_fft / 2 + 1;
  const double fmax = static_cast<double>(sample_rate) / 2.0;
  const double mel_max = hz_to_mel(fmax);

  std::vector<double> mel_pts(n_mels + 2);
  for (std::size_t i = 0; i < mel_pts.size(); ++i)
    mel_pts[i] = mel_to_hz(mel_max * static_cast<double>(i) / static_cast<double>(n_mels + 1));

  Mat fb(n_mels, n_bins);
  const double bin_hz = static_cast<double>(sample_rate) / static_cast<double>(n_fft);
  for (std::size_t m = 0; m < n_mels; ++m) {
    const double left = mel_pts[m], center = mel_pts[m + 1], right = mel_pts[m + 2];
    for (std::size_t k = 0; k < n_bins; ++k) {
      const double f = bin_hz * static_cast<double>(k);
      double w = 0.0;
      if (f > left && f < right)
        w = (f <= center) ? (f - left) / (center - left) : (right - f) / (right - center);
      fb(m, k) = w;
    }
  }
  return fb;
}

/// Orthonormal DCT-II: y_k = s_k * sum_n x_n cos(pi k (2n+1) / (2N)),
/// s_0 = sqrt(1/N), s_k = sqrt(2/N) otherwise.
inline Vec dct2_ortho(const Vec& x, std::size_t n_out) {
  const std::size_t n = x.size();
  Vec y(n_out, 0.0);
  for (std::size_t k = 0; k < n_out; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      acc += x[i] * std::cos(std::numbers::pi * static_cast<double>(k) *
                             (2.0 * static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(n)));
    const double scale = (k == 0) ? std::sqrt(1.0 / static_cast<double>(n))
                                  : std::sqrt(2.0 / static_cast<double>(n));
    y[k] = scale * acc;
  }
  return y;
}

/// MFCCs from an existing power spectrogram: mel filterbank -> ln (floored
/// at 1e-10) -> orthonormal DCT-II, keeping the first n_mfcc coefficients.
inline Mat mfcc_from_spectrogram(const Spectrogram& spec, int sample_rate, std::size_t n_mels,
                                 std::size_t n_mfcc) {
  if (n_mfcc > n_mels)
    throw ConfigError("n_mfcc (" + std::to_string(n_mfcc) + ") exceeds n_mels (" +
                      std::to_string(n_mels) + ")");
  const Mat fb = mel_filterbank(n_mels, spec.n_fft, sample_rate);

  Mat out(spec.power.rows, n_mfcc);
  Vec log_mel(n_mels);
  for (std::size_t t = 0; t < spec.power.rows; ++t) {
    for (std::size_t m = 0; m < n_mels; ++m) {
      double e = 0.0;
      for (std::size_t k = 0; k < spec.power.cols; ++k) e += fb(m, k) * spec.power(t, k);
      log_mel[m] = std::log(std::max(e, kLogFloor));
    }
    Vec coeffs = dct2_ortho(log_mel, n_mfcc);
    for (std::size_t c = 0; c < n_mfcc; ++c) out(t, c) = coeffs[c];
  }
  return out;
}

/// Returns n_frames x n_mfcc.
inline Mat mfcc(const AudioBuffer& audio, const FrameConfig& cfg, std::size_t n_mels,
                std::size_t n_mfcc) {
  if (n_mfcc > n_mels)
    throw ConfigError("n_mfcc (" + std::to_string(n_mfcc) + ") exceeds n_mels (" +
                      std::to_string(n_mels) + ")");
  if (audio.sample_rate < 8000)
    throw DomainError("MFCC extraction requires sample_rate >= 8000 Hz");
  return mfcc_from_spectrogram(frame_and_spectrum(audio, cfg), audio.sample_rate, n_mels, n_mfcc);
}

}  // namespace swell::dsp
