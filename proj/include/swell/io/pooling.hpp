#pragma once

#include <string>

#include "swell/common.hpp"
#include "swell/io/swem.hpp"

namespace swell::io {

/// mean: per-column arithmetic mean over all rows (chunk or token pooling).
/// cls_first: copy of row 0, the [CLS]-style sentence representation.
enum class PoolStrategy { mean, cls_first };

inline PoolStrategy pool_strategy_from_string(const std::string& s) {
  if (s == "mean") return PoolStrategy::mean;
  if (s == "cls_first") return PoolStrategy::cls_first;
  throw ConfigError("unknown pooling strategy '" + s + "' (expected mean or cls_first)");
}

inline const char* to_string(PoolStrategy s) {
  return s == PoolStrategy::mean ? "mean" : "cls_first";
}

inline Vec pool_rows(const EmbeddingMatrix& m, PoolStrategy strategy) {
  if (m.rows < 1) throw DomainError("pool_rows: matrix has no rows");
  Vec out(m.dim, 0.0);
  if (strategy == PoolStrategy::cls_first) {
    for (std::size_t c = 0; c < m.dim; ++c) out[c] = static_cast<double>(m.at(0, c));
    return out;
  }
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.dim; ++c) out[c] += static_cast<double>(m.at(r, c));
  for (double& x : out) x /= static_cast<double>(m.rows);
  return out;
}

}  // namespace swell::io
