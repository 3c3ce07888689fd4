#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "swell/common.hpp"
#include "swell/dsp/audio.hpp"
#include "swell/dsp/fft.hpp"

namespace swell::dsp {

enum class Window { hann, rectangular };

/// Short-time analysis geometry. hop_len <= frame_len <= n_fft.
struct FrameConfig {
  std::size_t frame_len = 0;
  std::size_t hop_len = 0;
  std::size_t n_fft = 0;
  Window window = Window::hann;

  void validate() const {
    if (hop_len == 0 || hop_len > frame_len || frame_len > n_fft)
      throw ConfigError("frame config must satisfy 0 < hop_len <= frame_len <= n_fft");
  }

  /// 25 ms frames, 10 ms hop, Hann window, n_fft = next power of two.
  static FrameConfig speech_default(int sample_rate) {
    FrameConfig cfg;
    cfg.frame_len = static_cast<std::size_t>(sample_rate * 25 / 1000);
    cfg.hop_len = static_cast<std::size_t>(sample_rate * 10 / 1000);
    cfg.n_fft = next_power_of_two(cfg.frame_len);
    cfg.window = Window::hann;
    return cfg;
  }
};

/// One-sided power spectrogram: n_frames x (n_fft/2 + 1), entries |X_k|^2.
struct Spectrogram {
  Mat power;
  double bin_hz = 0.0;
  std::size_t n_fft = 0;
};

/// Periodic Hann window: w[i] = 0.5 * (1 - cos(2*pi*i / N)).
inline std::vector<double> make_window(Window w, std::size_t n) {
  std::vector<double> win(n, 1.0);
  if (w == Window::hann) {
    for (std::size_t i = 0; i < n; ++i)
      win[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                     static_cast<double>(n)));
  }
  return win;
}

inline std::size_t frame_count(std::size_t n_samples, const FrameConfig& cfg) {
  if (n_samples < cfg.frame_len) return 0;
  return 1 + (n_samples - cfg.frame_len) / cfg.hop_len;
}

/// Frame, window, zero-pad to n_fft, and take the squared-magnitude real DFT.
inline Spectrogram frame_and_spectrum(const AudioBuffer& audio, const FrameConfig& cfg) {
  cfg.validate();
  if (audio.samples.size() < cfg.frame_len)
    throw DomainError("audio shorter than one frame (" + std::to_string(audio.samples.size()) +
                      " < " + std::to_string(cfg.frame_len) + " samples)");

  const std::size_t n_frames = frame_count(audio.samples.size(), cfg);
  const std::size_t n_bins = cfg.n_fft / 2 + 1;
  const std::vector<double> win = make_window(cfg.window, cfg.frame_len);

  Spectrogram spec;
  spec.power = Mat(n_frames, n_bins);
  spec.bin_hz = static_cast<double>(audio.sample_rate) / static_cast<double>(cfg.n_fft);
  spec.n_fft = cfg.n_fft;

  std::vector<double> frame(cfg.frame_len);
  for (std::size_t t = 0; t < n_frames; ++t) {
    const std::size_t off = t * cfg.hop_len;
    for (std::size_t i = 0; i < cfg.frame_len; ++i) frame[i] = audio.samples[off + i] * win[i];
    auto bins = real_dft(frame, cfg.n_fft);
    for (std::size_t k = 0; k < n_bins; ++k) spec.power(t, k) = std::norm(bins[k]);
  }
  return spec;
}

}  // namespace swell::dsp
