#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "swell/common.hpp"

namespace swell::dsp {

/// Mono PCM audio, samples scaled to [-1, 1].
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = 0;

  double duration_s() const {
    return static_cast<double>(samples.size()) / static_cast<double>(sample_rate);
  }
};

namespace detail {

inline std::uint32_t read_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::uint16_t read_u16le(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

inline void write_u32le(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

inline void write_u16le(std::ostream& os, std::uint16_t v) {
  unsigned char b[2] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8)};
  os.write(reinterpret_cast<const char*>(b), 2);
}

}  // namespace detail

/// Quantize a [-1, 1] sample the same way write_wav does. Exposed so the
/// synthetic corpus can predict the exact payload it will get back.
inline std::int16_t quantize_i16(double x) {
  double scaled = std::round(x * 32768.0);
  scaled = std::clamp(scaled, -32768.0, 32767.0);
  return static_cast<std::int16_t>(scaled);
}

/// Read a RIFF/WAVE file. Only mono 16-bit PCM is accepted; samples are
/// scaled to [-1, 1] by dividing by 32768.
inline AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open WAV file: " + path.string());

  unsigned char hdr[12];
  if (!f.read(reinterpret_cast<char*>(hdr), 12))
    throw FormatError("WAV header truncated: " + path.string());
  if (std::memcmp(hdr, "RIFF", 4) != 0)
    throw FormatError("not a RIFF file: " + path.string());
  if (std::memcmp(hdr + 8, "WAVE", 4) != 0)
    throw FormatError("RIFF file is not WAVE: " + path.string());

  bool have_fmt = false;
  std::uint16_t format_tag = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  std::vector<unsigned char> payload;
  bool have_data = false;

  unsigned char chunk[8];
  while (f.read(reinterpret_cast<char*>(chunk), 8)) {
    std::uint32_t size = detail::read_u32le(chunk + 4);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw FormatError("fmt chunk too small: " + path.string());
      std::vector<unsigned char> fmt(size);
      if (!f.read(reinterpret_cast<char*>(fmt.data()), size))
        throw FormatError("fmt chunk truncated: " + path.string());
      format_tag = detail::read_u16le(fmt.data());
      channels = detail::read_u16le(fmt.data() + 2);
      sample_rate = detail::read_u32le(fmt.data() + 4);
      bits = detail::read_u16le(fmt.data() + 14);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      payload.resize(size);
      if (!f.read(reinterpret_cast<char*>(payload.data()), size))
        throw FormatError("data chunk truncated: " + path.string());
      have_data = true;
    } else {
      f.seekg(size + (size & 1), std::ios::cur);  // chunks are word-aligned
      continue;
    }
    if (size & 1) f.seekg(1, std::ios::cur);
  }

  if (!have_fmt || !have_data)
    throw FormatError("WAV missing fmt or data chunk: " + path.string());
  if (format_tag != 1)
    throw UnsupportedError("only PCM WAV is supported (format tag " + std::to_string(format_tag) +
                           "): " + path.string());
  if (channels != 1)
    throw UnsupportedError("only mono WAV is supported (" + std::to_string(channels) +
                           " channels): " + path.string());
  if (bits != 16)
    throw UnsupportedError("only 16-bit PCM is supported (" + std::to_string(bits) +
                           " bits): " + path.string());
  if (sample_rate == 0) throw FormatError("zero sample rate: " + path.string());
  if (payload.size() < 2) throw FormatError("empty data chunk: " + path.string());

  AudioBuffer out;
  out.sample_rate = static_cast<int>(sample_rate);
  out.samples.resize(payload.size() / 2);
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    std::int16_t v = static_cast<std::int16_t>(
        static_cast<std::uint16_t>(payload[2 * i] | (payload[2 * i + 1] << 8)));
    out.samples[i] = static_cast<double>(v) / 32768.0;
  }
  return out;
}

/// Write mono 16-bit PCM. Samples outside [-1, 1] are clamped.
inline void write_wav(const std::filesystem::path& path, const std::vector<double>& samples,
                      int sample_rate) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write WAV file: " + path.string());

  const std::uint32_t data_size = static_cast<std::uint32_t>(samples.size() * 2);
  f.write("RIFF", 4);
  detail::write_u32le(f, 36 + data_size);
  f.write("WAVE", 4);
  f.write("fmt ", 4);
  detail::write_u32le(f, 16);
  detail::write_u16le(f, 1);  // PCM
  detail::write_u16le(f, 1);  // mono
  detail::write_u32le(f, static_cast<std::uint32_t>(sample_rate));
  detail::write_u32le(f, static_cast<std::uint32_t>(sample_rate) * 2);  // byte rate
  detail::write_u16le(f, 2);                                            // block align
  detail::write_u16le(f, 16);
  f.write("data", 4);
  detail::write_u32le(f, data_size);
  for (double s : samples) {
    std::int16_t v = quantize_i16(s);
    unsigned char b[2] = {static_cast<unsigned char>(static_cast<std::uint16_t>(v) & 0xFF),
                          static_cast<unsigned char>(static_cast<std::uint16_t>(v) >> 8)};
    f.write(reinterpret_cast<const char*>(b), 2);
  }
  if (!f) throw IoError("short write on WAV file: " + path.string());
}

}  // namespace swell::dsp
