#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "swell/common.hpp"
#include "swell/dsp/mfcc.hpp"
#include "swell/dsp/spectrogram.hpp"

namespace swell::dsp {

/// Octave band edges for spectral contrast: [0, fmin], then doublings of
/// fmin. n_bands octave bands plus the top band give n_bands + 1 rows; the
/// top band is capped at Nyquist. Bin membership is inclusive on both edges.
inline std::vector<std::pair<double, double>> contrast_band_edges(std::size_t n_bands, double fmin,
                                                                  double nyquist) {
  std::vector<std::pair<double, double>> bands;
  double lo = 0.0, hi = fmin;
  for (std::size_t b = 0; b <= n_bands; ++b) {
    bands.emplace_back(lo, std::min(hi, nyquist));
    lo = hi;
    hi *= 2.0;
  }
  return bands;
}

/// Number of bins averaged on each side of a band: a fixed fraction of the
/// band's bin count, at least one.
inline std::size_t contrast_quantile_count(std::size_t band_bins, double alpha_quantile) {
  return std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(alpha_quantile * static_cast<double>(band_bins))));
}

/// Per frame and band: peak = ln(mean of the top alpha fraction of band
/// bins), valley = ln(mean of the bottom alpha fraction), both floored at
/// 1e-10; contrast = peak - valley >= 0. Returns n_frames x (n_bands + 1).
inline Mat spectral_contrast(const Spectrogram& spec, std::size_t n_bands = 6,
                             double alpha_quantile = 0.02, double fmin = 200.0) {
  if (n_bands < 1) throw ConfigError("spectral contrast needs n_bands >= 1");
  const double nyquist = spec.bin_hz * static_cast<double>(spec.power.cols - 1);
  const auto bands = contrast_band_edges(n_bands, fmin, nyquist);

  // Resolve each band to a bin range once.
  std::vector<std::vector<std::size_t>> band_bins(bands.size());
  for (std::size_t b = 0; b < bands.size(); ++b) {
    for (std::size_t k = 0; k < spec.power.cols; ++k) {
      const double f = spec.bin_hz * static_cast<double>(k);
      if (f >= bands[b].first && f <= bands[b].second) band_bins[b].push_back(k);
    }
    if (band_bins[b].empty())
      throw ConfigError("spectral contrast band " + std::to_string(b) +
                        " contains no bins; n_fft too small for the band layout");
  }

  Mat out(spec.power.rows, bands.size());
  std::vector<double> vals;
  for (std::size_t t = 0; t < spec.power.rows; ++t) {
    for (std::size_t b = 0; b < bands.size(); ++b) {
      vals.clear();
      for (std::size_t k : band_bins[b]) vals.push_back(spec.power(t, k));
      std::sort(vals.begin(), vals.end());
      const std::size_t q = contrast_quantile_count(vals.size(), alpha_quantile);
      double bottom = 0.0, top = 0.0;
      for (std::size_t i = 0; i < q; ++i) {
        bottom += vals[i];
        top += vals[vals.size() - 1 - i];
      }
      bottom /= static_cast<double>(q);
      top /= static_cast<double>(q);
      const double peak = std::log(std::max(top, kLogFloor));
      const double valley = std::log(std::max(bottom, kLogFloor));
      out(t, b) = peak - valley;
    }
  }
  return out;
}

}  // namespace swell::dsp
