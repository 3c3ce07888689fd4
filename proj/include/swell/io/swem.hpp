#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "swell/common.hpp"

namespace swell::io {

/// Precomputed embedding block: rows (chunks or tokens) x dim, float32.
/// This is the unit every upstream model hands to the pipeline.
struct EmbeddingMatrix {
  std::size_t rows = 0;
  std::size_t dim = 0;
  std::vector<float> data;  // row-major

  float& at(std::size_t r, std::size_t c) { return data[r * dim + c]; }
  float at(std::size_t r, std::size_t c) const { return data[r * dim + c]; }

  void validate() const {
    if (rows < 1 || dim < 1) throw DomainError("EmbeddingMatrix must have rows >= 1 and dim >= 1");
    if (data.size() != rows * dim) throw ShapeError("EmbeddingMatrix payload size mismatch");
    for (float x : data)
      if (!std::isfinite(x)) throw DomainError("EmbeddingMatrix contains non-finite values");
  }
};

// SWEM binary layout, little-endian:
//   magic "SWEM" | version u8 = 1 | 3 reserved zero bytes |
//   rows u32 | cols u32 | rows*cols float32 row-major
inline constexpr char kSwemMagic[4] = {'S', 'W', 'E', 'M'};
inline constexpr std::uint8_t kSwemVersion = 1;

inline void write_swem(const EmbeddingMatrix& m, const std::filesystem::path& path) {
  m.validate();
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write SWEM file: " + path.string());

  f.write(kSwemMagic, 4);
  const unsigned char meta[4] = {kSwemVersion, 0, 0, 0};
  f.write(reinterpret_cast<const char*>(meta), 4);
  const std::uint32_t rows = static_cast<std::uint32_t>(m.rows);
  const std::uint32_t cols = static_cast<std::uint32_t>(m.dim);
  unsigned char dims[8] = {
      static_cast<unsigned char>(rows),       static_cast<unsigned char>(rows >> 8),
      static_cast<unsigned char>(rows >> 16), static_cast<unsigned char>(rows >> 24),
      static_cast<unsigned char>(cols),       static_cast<unsigned char>(cols >> 8),
      static_cast<unsigned char>(cols >> 16), static_cast<unsigned char>(cols >> 24)};
  f.write(reinterpret_cast<const char*>(dims), 8);

  static_assert(sizeof(float) == 4);
  std::vector<unsigned char> payload(m.data.size() * 4);
  for (std::size_t i = 0; i < m.data.size(); ++i) {
    std::uint32_t bits;
    std::memcpy(&bits, &m.data[i], 4);  // host is little-endian on all targets we build for
    payload[4 * i + 0] = static_cast<unsigned char>(bits);
    payload[4 * i + 1] = static_cast<unsigned char>(bits >> 8);
    payload[4 * i + 2] = static_cast<unsigned char>(bits >> 16);
    payload[4 * i + 3] = static_cast<unsigned char>(bits >> 24);
  }
  f.write(reinterpret_cast<const char*>(payload.data()),
          static_cast<std::streamsize>(payload.size()));
  if (!f) throw IoError("short write on SWEM file: " + path.string());
}

inline EmbeddingMatrix read_swem(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open SWEM file: " + path.string());

  unsigned char hdr[16];
  if (!f.read(reinterpret_cast<char*>(hdr), 16))
    throw FormatError("SWEM header truncated: " + path.string());
  if (std::memcmp(hdr, kSwemMagic, 4) != 0)
    throw FormatError("bad SWEM magic: " + path.string());
  if (hdr[4] != kSwemVersion)
    throw FormatError("unsupported SWEM version " + std::to_string(hdr[4]) + ": " + path.string());

  auto u32 = [&](std::size_t off) {
    return static_cast<std::uint32_t>(hdr[off]) | (static_cast<std::uint32_t>(hdr[off + 1]) << 8) |
           (static_cast<std::uint32_t>(hdr[off + 2]) << 16) |
           (static_cast<std::uint32_t>(hdr[off + 3]) << 24);
  };
  EmbeddingMatrix m;
  m.rows = u32(8);
  m.dim = u32(12);
  if (m.rows < 1 || m.dim < 1) throw FormatError("SWEM header has zero dimension: " + path.string());

  const std::size_t n = m.rows * m.dim;
  std::vector<unsigned char> payload(n * 4);
  f.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
  if (static_cast<std::size_t>(f.gcount()) != payload.size())
    throw FormatError("SWEM payload truncated (header claims " + std::to_string(m.rows) + "x" +
                      std::to_string(m.dim) + "): " + path.string());
  if (f.peek() != std::ifstream::traits_type::eof())
    throw FormatError("SWEM payload longer than header claims: " + path.string());

  m.data.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t bits = static_cast<std::uint32_t>(payload[4 * i]) |
                         (static_cast<std::uint32_t>(payload[4 * i + 1]) << 8) |
                         (static_cast<std::uint32_t>(payload[4 * i + 2]) << 16) |
                         (static_cast<std::uint32_t>(payload[4 * i + 3]) << 24);
    std::memcpy(&m.data[i], &bits, 4);
  }
  return m;
}

/// Convenience for feature vectors: a 1 x dim SWEM from doubles.
inline EmbeddingMatrix to_embedding_row(const Vec& v) {
  EmbeddingMatrix m;
  m.rows = 1;
  m.dim = v.size();
  m.data.reserve(v.size());
  for (double x : v) m.data.push_back(static_cast<float>(x));
  return m;
}

}  // namespace swell::io
