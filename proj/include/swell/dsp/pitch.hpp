#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "swell/common.hpp"
#include "swell/dsp/audio.hpp"
#include "swell/dsp/fft.hpp"
#include "swell/dsp/spectrogram.hpp"

namespace swell::dsp {

/// Per-frame pitch estimate. f0 is 0 for unvoiced frames; voiced_prob is the
/// fraction of YIN thresholds that produced a period candidate.
struct PitchTrack {
  std::vector<double> f0;
  std::vector<double> voiced_prob;
};

namespace detail {

constexpr int kYinThresholds = 10;
constexpr double kYinThresholdStep = 0.05;  // grid 0.05, 0.10, ..., 0.50

/// YIN difference function d(tau) for tau in [0, tau_max], over integration
/// window W = frame_len - tau_max. The cross term is computed with an FFT
/// correlation; the energy terms come from a prefix sum.
inline std::vector<double> yin_difference(const std::vector<double>& frame, std::size_t tau_max) {
  const std::size_t w = frame.size() - tau_max;
  std::vector<double> prefix_sq(frame.size() + 1, 0.0);
  for (std::size_t i = 0; i < frame.size(); ++i)
    prefix_sq[i + 1] = prefix_sq[i] + frame[i] * frame[i];

  const std::vector<double> window(frame.begin(), frame.begin() + static_cast<std::ptrdiff_t>(w));
  const std::vector<double> corr = cross_correlation(frame, window, tau_max);

  std::vector<double> d(tau_max + 1, 0.0);
  const double e0 = prefix_sq[w];
  for (std::size_t tau = 1; tau <= tau_max; ++tau) {
    const double e_tau = prefix_sq[tau + w] - prefix_sq[tau];
    d[tau] = std::max(0.0, e0 + e_tau - 2.0 * corr[tau]);
  }
  return d;
}

/// Cumulative-mean-normalized difference. Zero-energy frames give d' = 1.
inline std::vector<double> yin_cmnd(const std::vector<double>& d) {
  std::vector<double> dn(d.size(), 1.0);
  double running = 0.0;
  for (std::size_t tau = 1; tau < d.size(); ++tau) {
    running += d[tau];
    dn[tau] = (running > 0.0) ? d[tau] * static_cast<double>(tau) / running : 1.0;
  }
  return dn;
}

/// First lag at which d' drops below the threshold, descended to the local
/// minimum and refined by parabolic interpolation. Returns 0 if none.
inline double yin_candidate_lag(const std::vector<double>& dn, std::size_t tau_min,
                                std::size_t tau_max, double threshold) {
  for (std::size_t tau = tau_min; tau <= tau_max; ++tau) {
    if (dn[tau] >= threshold) continue;
    while (tau + 1 <= tau_max && dn[tau + 1] < dn[tau]) ++tau;
    double refined = static_cast<double>(tau);
    if (tau > 1 && tau + 1 < dn.size()) {
      const double a = dn[tau - 1], b = dn[tau], c = dn[tau + 1];
      const double denom = a - 2.0 * b + c;
      if (std::abs(denom) > 1e-30) {
        double delta = 0.5 * (a - c) / denom;
        delta = std::clamp(delta, -0.5, 0.5);
        refined += delta;
      }
    }
    return std::clamp(refined, static_cast<double>(tau_min), static_cast<double>(tau_max));
  }
  return 0.0;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace detail

/// Frame geometry for pitch tracking. Longer frames than the spectral
/// default so the integration window holds two periods of fmin.
inline FrameConfig pitch_default(int sample_rate) {
  FrameConfig cfg;
  cfg.frame_len = 2048;
  cfg.hop_len = 512;
  cfg.n_fft = 2048;  // unused by the tracker, kept valid
  cfg.window = Window::rectangular;
  if (sample_rate > 16000) {
    cfg.frame_len = next_power_of_two(static_cast<std::size_t>(sample_rate) * 2048 / 16000);
    cfg.hop_len = cfg.frame_len / 4;
    cfg.n_fft = cfg.frame_len;
  }
  return cfg;
}

/// Simplified pYIN: per frame, the cumulative-mean-normalized YIN difference
/// is thresholded on a fixed 10-value grid; voiced_prob is the fraction of
/// thresholds that yielded a period, f0 the median of their frequencies.
/// The full pYIN beta prior and HMM smoothing are deliberately not used.
inline PitchTrack pyin_track(const AudioBuffer& audio, const FrameConfig& cfg, double fmin = 65.0,
                             double fmax = 400.0) {
  if (fmin < 40.0) throw ConfigError("pyin fmin must be >= 40 Hz");
  if (fmax > static_cast<double>(audio.sample_rate) / 4.0)
    throw ConfigError("pyin fmax must be <= sample_rate / 4");
  const double sr = static_cast<double>(audio.sample_rate);
  const std::size_t tau_min = static_cast<std::size_t>(std::ceil(sr / fmax));
  const std::size_t tau_max = static_cast<std::size_t>(std::floor(sr / fmin));
  if (tau_min < 1 || tau_min >= tau_max) throw ConfigError("pyin lag range [sr/fmax, sr/fmin] is empty");
  if (cfg.frame_len < 2 * tau_max)
    throw ConfigError("pyin frame_len must hold two periods of fmin (need >= " +
                      std::to_string(2 * tau_max) + " samples)");
  if (audio.samples.size() < cfg.frame_len)
    throw DomainError("audio shorter than one pitch frame");

  const std::size_t n_frames = frame_count(audio.samples.size(), cfg);
  PitchTrack track;
  track.f0.resize(n_frames, 0.0);
  track.voiced_prob.resize(n_frames, 0.0);

  std::vector<double> frame(cfg.frame_len);
  for (std::size_t t = 0; t < n_frames; ++t) {
    const std::size_t off = t * cfg.hop_len;
    std::copy(audio.samples.begin() + static_cast<std::ptrdiff_t>(off),
              audio.samples.begin() + static_cast<std::ptrdiff_t>(off + cfg.frame_len),
              frame.begin());
    const auto d = detail::yin_difference(frame, tau_max);
    const auto dn = detail::yin_cmnd(d);

    std::vector<double> candidates;
    for (int i = 1; i <= detail::kYinThresholds; ++i) {
      const double threshold = detail::kYinThresholdStep * static_cast<double>(i);
      const double lag = detail::yin_candidate_lag(dn, tau_min, tau_max, threshold);
      if (lag > 0.0) candidates.push_back(sr / lag);
    }
    if (!candidates.empty()) {
      track.f0[t] = detail::median(candidates);
      track.voiced_prob[t] =
          static_cast<double>(candidates.size()) / static_cast<double>(detail::kYinThresholds);
    }
  }
  return track;
}

}  // namespace swell::dsp
