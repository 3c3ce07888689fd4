#pragma once

#include <cmath>

#include "swell/common.hpp"

namespace swell::nn {

struct LayerNormParams {
  Vec gamma;
  Vec beta;
  double eps = 1e-5;
};

inline LayerNormParams make_layer_norm(std::size_t dim, double eps = 1e-5) {
  LayerNormParams p;
  p.gamma = Vec(dim, 1.0);
  p.beta = Vec(dim, 0.0);
  p.eps = eps;
  return p;
}

/// y = gamma * (x - mean) / sqrt(var + eps) + beta, population variance.
inline Vec layer_norm(const Vec& x, const LayerNormParams& p) {
  const std::size_t n = x.size();
  if (n < 2) throw ShapeError("layer_norm requires dim >= 2");
  if (p.gamma.size() != n || p.beta.size() != n)
    throw ShapeError("layer_norm parameter size does not match input");

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  const double inv_std = 1.0 / std::sqrt(var + p.eps);

  Vec y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = p.gamma[i] * (x[i] - mean) * inv_std + p.beta[i];
  return y;
}

struct LayerNormGrads {
  Vec gamma;
  Vec beta;
};

/// Backward for layer_norm; accumulates parameter grads, returns dL/dx.
inline Vec layer_norm_backward(const Vec& x, const LayerNormParams& p, const Vec& grad_out,
                               LayerNormGrads& grads) {
  const std::size_t n = x.size();
  if (n < 2) throw ShapeError("layer_norm requires dim >= 2");
  if (grad_out.size() != n) throw ShapeError("layer_norm_backward: gradient size mismatch");
  if (grads.gamma.empty()) {
    grads.gamma = Vec(n, 0.0);
    grads.beta = Vec(n, 0.0);
  }

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  const double inv_std = 1.0 / std::sqrt(var + p.eps);

  // ghat_i = dL/dxhat_i; dL/dx folds in the mean and variance paths.
  Vec xhat(n), ghat(n);
  double ghat_mean = 0.0, ghat_xhat_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xhat[i] = (x[i] - mean) * inv_std;
    ghat[i] = grad_out[i] * p.gamma[i];
    ghat_mean += ghat[i];
    ghat_xhat_mean += ghat[i] * xhat[i];
    grads.gamma[i] += grad_out[i] * xhat[i];
    grads.beta[i] += grad_out[i];
  }
  ghat_mean /= static_cast<double>(n);
  ghat_xhat_mean /= static_cast<double>(n);

  Vec grad_x(n);
  for (std::size_t i = 0; i < n; ++i)
    grad_x[i] = inv_std * (ghat[i] - ghat_mean - xhat[i] * ghat_xhat_mean);
  return grad_x;
}

}  // namespace swell::nn
