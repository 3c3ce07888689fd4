#pragma once

#include <string>

#include "swell/common.hpp"
#include "swell/rng.hpp"

namespace swell::nn {

/// Fully connected layer y = W x + b, W is out_dim x in_dim.
struct DenseLayer {
  Mat W;
  Vec b;

  std::size_t in_dim() const { return W.cols; }
  std::size_t out_dim() const { return W.rows; }
};

/// Glorot uniform init: weights U(-r, r) with r = sqrt(6 / (fan_in + fan_out)),
/// biases zero.
inline DenseLayer make_dense(std::size_t out_dim, std::size_t in_dim, Rng& rng) {
  DenseLayer layer;
  layer.W = Mat(out_dim, in_dim);
  layer.b = Vec(out_dim, 0.0);
  const double r = std::sqrt(6.0 / static_cast<double>(in_dim + out_dim));
  for (double& w : layer.W.a) w = rng.uniform(-r, r);
  return layer;
}

inline Vec dense_forward(const DenseLayer& layer, const Vec& x) {
  if (x.size() != layer.in_dim())
    throw ShapeError("dense_forward: input size " + std::to_string(x.size()) +
                     " != in_dim " + std::to_string(layer.in_dim()));
  Vec y = layer.b;
  for (std::size_t r = 0; r < layer.out_dim(); ++r) {
    const double* w = layer.W.row_ptr(r);
    double acc = 0.0;
    for (std::size_t c = 0; c < layer.in_dim(); ++c) acc += w[c] * x[c];
    y[r] += acc;
  }
  return y;
}

struct DenseGrads {
  Mat W;
  Vec b;
};

/// Backward pass for y = W x + b given dL/dy. Accumulates into grads
/// (so batched training can sum sample gradients) and returns dL/dx.
inline Vec dense_backward(const DenseLayer& layer, const Vec& x, const Vec& grad_out,
                          DenseGrads& grads) {
  if (x.size() != layer.in_dim() || grad_out.size() != layer.out_dim())
    throw ShapeError("dense_backward: gradient/input dims do not match the layer");
  if (grads.W.rows == 0) {
    grads.W = Mat(layer.out_dim(), layer.in_dim());
    grads.b = Vec(layer.out_dim(), 0.0);
  }
  Vec grad_x(layer.in_dim(), 0.0);
  for (std::size_t r = 0; r < layer.out_dim(); ++r) {
    const double g = grad_out[r];
    grads.b[r] += g;
    double* gw = grads.W.row_ptr(r);
    const double* w = layer.W.row_ptr(r);
    for (std::size_t c = 0; c < layer.in_dim(); ++c) {
      gw[c] += g * x[c];
      grad_x[c] += g * w[c];
    }
  }
  return grad_x;
}

inline Vec relu(const Vec& x) {
  Vec y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
  return y;
}

/// dL/dx for y = relu(x), given the pre-activation x.
inline Vec relu_backward(const Vec& x, const Vec& grad_out) {
  Vec g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = x[i] > 0.0 ? grad_out[i] : 0.0;
  return g;
}

}  // namespace swell::nn
