#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "swell/common.hpp"
#include "swell/dsp/mfcc.hpp"
#include "swell/dsp/pitch.hpp"
#include "swell/dsp/spectral_contrast.hpp"
#include "swell/dsp/spectrogram.hpp"

namespace swell::dsp {

/// v2 carries MFCC means only; v3 appends spectral contrast means and pitch
/// statistics.
enum class AcousticVersion { v2, v3 };

inline const char* to_string(AcousticVersion v) {
  return v == AcousticVersion::v2 ? "v2" : "v3";
}

struct AcousticFeatureVector {
  AcousticVersion version = AcousticVersion::v3;
  Vec mfcc_mean;      // per-coefficient time mean
  Vec contrast_mean;  // per-band time mean, v3 only
  double f0_mean = 0.0;
  double f0_std = 0.0;
  double voiced_prob_mean = 0.0;

  /// Flat per-subject feature vector: v2 is the 40 MFCC means, v3 the
  /// 40 + 7 + 3 = 50 concatenation.
  Vec to_vector() const {
    Vec out = mfcc_mean;
    if (version == AcousticVersion::v3) {
      out.insert(out.end(), contrast_mean.begin(), contrast_mean.end());
      out.push_back(f0_mean);
      out.push_back(f0_std);
      out.push_back(voiced_prob_mean);
    }
    return out;
  }
};

namespace detail {

inline Vec column_means(const Mat& m) {
  Vec out(m.cols, 0.0);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c) out[c] += m(r, c);
  for (double& x : out) x /= static_cast<double>(m.rows);
  return out;
}

}  // namespace detail

/// Collapse per-frame tracks into one feature vector. The MFCC and contrast
/// matrices must come from the same spectrogram (equal frame counts); the
/// pitch track uses its own framing and is aggregated independently. Pitch
/// means/stds are taken over voiced frames only (population std); audio with
/// no voiced frame yields zeros.
inline AcousticFeatureVector aggregate_acoustic(const Mat& mfcc_frames, const Mat& contrast_frames,
                                                const PitchTrack& pitch, AcousticVersion version) {
  if (mfcc_frames.rows == 0) throw DomainError("aggregate_acoustic: empty MFCC matrix");

  AcousticFeatureVector out;
  out.version = version;
  out.mfcc_mean = detail::column_means(mfcc_frames);
  if (version == AcousticVersion::v2) return out;

  if (contrast_frames.rows != mfcc_frames.rows)
    throw ShapeError("aggregate_acoustic: contrast has " + std::to_string(contrast_frames.rows) +
                     " frames but MFCC has " + std::to_string(mfcc_frames.rows));
  if (pitch.f0.size() != pitch.voiced_prob.size())
    throw ShapeError("aggregate_acoustic: pitch track arrays differ in length");
  if (pitch.f0.empty()) throw DomainError("aggregate_acoustic: empty pitch track");

  out.contrast_mean = detail::column_means(contrast_frames);

  double sum = 0.0, sum_sq = 0.0;
  std::size_t voiced = 0;
  for (double f : pitch.f0) {
    if (f > 0.0) {
      sum += f;
      sum_sq += f * f;
      ++voiced;
    }
  }
  if (voiced > 0) {
    out.f0_mean = sum / static_cast<double>(voiced);
    const double var = sum_sq / static_cast<double>(voiced) - out.f0_mean * out.f0_mean;
    out.f0_std = std::sqrt(std::max(0.0, var));
  }
  double vp = 0.0;
  for (double p : pitch.voiced_prob) vp += p;
  out.voiced_prob_mean = vp / static_cast<double>(pitch.voiced_prob.size());
  return out;
}

/// Knobs for whole-file extraction; defaults match the values used
/// throughout the pipeline.
struct ExtractOptions {
  std::size_t n_mels = 128;
  std::size_t n_mfcc = 40;
  std::size_t contrast_bands = 6;
  double contrast_alpha = 0.02;
  double contrast_fmin = 200.0;
  double pitch_fmin = 65.0;
  double pitch_fmax = 400.0;
};

/// One audio file -> one AcousticFeatureVector. v2 skips the contrast and
/// pitch passes entirely.
inline AcousticFeatureVector extract_acoustic(const AudioBuffer& audio, AcousticVersion version,
                                              const ExtractOptions& opt = {}) {
  if (audio.sample_rate < 8000)
    throw DomainError("acoustic extraction requires sample_rate >= 8000 Hz");
  const FrameConfig spec_cfg = FrameConfig::speech_default(audio.sample_rate);
  const Spectrogram spec = frame_and_spectrum(audio, spec_cfg);
  const Mat mfcc_frames = mfcc_from_spectrogram(spec, audio.sample_rate, opt.n_mels, opt.n_mfcc);
  if (version == AcousticVersion::v2)
    return aggregate_acoustic(mfcc_frames, Mat{}, PitchTrack{}, version);

  const Mat contrast =
      spectral_contrast(spec, opt.contrast_bands, opt.contrast_alpha, opt.contrast_fmin);
  const PitchTrack pitch =
      pyin_track(audio, pitch_default(audio.sample_rate), opt.pitch_fmin, opt.pitch_fmax);
  return aggregate_acoustic(mfcc_frames, contrast, pitch, version);
}

}  // namespace swell::dsp
