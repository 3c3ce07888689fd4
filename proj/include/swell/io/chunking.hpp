#pragma once

#include <string>
#include <vector>

#include "swell/common.hpp"

namespace swell::io {

/// Half-open time interval [start_s, end_s) within a recording.
struct ChunkSpan {
  double start_s = 0.0;
  double end_s = 0.0;

  double length_s() const { return end_s - start_s; }
};

/// Cut [0, duration_s) into chunks of chunk_s seconds advancing by
/// chunk_s * (1 - overlap_frac). The final span is clipped to the duration,
/// and a trailing span shorter than 0.5 s is merged into its predecessor so
/// no degenerate chunk reaches the embedding model.
inline std::vector<ChunkSpan> chunk_spans(double duration_s, double chunk_s,
                                          double overlap_frac = 0.0) {
  if (duration_s <= 0.0) throw DomainError("chunk_spans: duration must be positive");
  if (chunk_s <= 0.0) throw DomainError("chunk_spans: chunk length must be positive");
  if (overlap_frac < 0.0 || overlap_frac >= 1.0)
    throw DomainError("chunk_spans: overlap fraction must be in [0, 1)");

  const double hop = chunk_s * (1.0 - overlap_frac);
  std::vector<ChunkSpan> spans;
  for (std::size_t k = 0;; ++k) {
    const double start = static_cast<double>(k) * hop;
    const double end = std::min(start + chunk_s, duration_s);
    spans.push_back({start, end});
    if (end >= duration_s) break;
  }

  constexpr double kMinTail = 0.5;
  if (spans.size() >= 2 && spans.back().length_s() < kMinTail) {
    spans[spans.size() - 2].end_s = spans.back().end_s;
    spans.pop_back();
  }
  return spans;
}

}  // namespace swell::io
