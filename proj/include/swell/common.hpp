#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace swell {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed file contents: bad magic, truncated header, corrupt payload.
class FormatError : public Error {
public:
  using Error::Error;
};

/// Well-formed file in a variant we do not handle (stereo WAV, float PCM, ...).
class UnsupportedError : public FormatError {
public:
  using FormatError::FormatError;
};

/// Invalid configuration values (band without bins, k > n, ...).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Inputs outside an operation's domain (too-short audio, non-distribution target).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Dimension or alignment mismatch between otherwise valid inputs.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// Inconsistent dataset metadata: duplicate ids, bad labels, split overlap.
class SchemaError : public Error {
public:
  using Error::Error;
};

/// Filesystem failures, always naming the offending path or subject.
class IoError : public Error {
public:
  using Error::Error;
};

/// Numerical failure during optimization (non-finite loss or gradient).
class TrainingError : public Error {
public:
  using Error::Error;
};

using Vec = std::vector<double>;

/// Dense row-major matrix of doubles. Deliberately minimal: the heavy
/// lifting in this library is loops over rows, not linear algebra.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  const double* row_ptr(std::size_t r) const { return a.data() + r * cols; }
  double* row_ptr(std::size_t r) { return a.data() + r * cols; }

  Vec row_copy(std::size_t r) const {
    return Vec(a.begin() + static_cast<std::ptrdiff_t>(r * cols),
               a.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols));
  }

  bool empty() const { return a.empty(); }
};

inline bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

inline bool all_finite(const Mat& m) {
  for (double x : m.a)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace swell
