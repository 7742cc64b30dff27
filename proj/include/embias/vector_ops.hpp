// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "embias/error.hpp"

namespace embias {

using Vector = std::vector<double>;
using VectorView = std::span<const double>;

inline void require_same_dimension(VectorView u, VectorView v) {
  if (u.size() != v.size()) {
    throw ComputationError("dimension mismatch: " + std::to_string(u.size()) +
                           " vs " + std::to_string(v.size()));
  }
}

inline double dot(VectorView u, VectorView v) {
  require_same_dimension(u, v);
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

inline double norm(VectorView v) { return std::sqrt(dot(v, v)); }

/// Cosine similarity clamped to [-1, 1]. Throws on zero-norm input.
inline double cosine(VectorView u, VectorView v) {
  require_same_dimension(u, v);
  const double nu = norm(u);
  const double nv = norm(v);
  if (nu == 0.0 || nv == 0.0) throw ComputationError("cosine of a zero vector");
  // Divide by the product of norms, not sequentially, so swapping arguments
  // is bit-for-bit symmetric.
  return std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0);
}

inline Vector normalized(VectorView v) {
  const double n = norm(v);
  if (n == 0.0) throw ComputationError("cannot normalize a zero vector");
  Vector out(v.begin(), v.end());
  for (double& x : out) x /= n;
  return out;
}

inline Vector subtract(VectorView u, VectorView v) {
  require_same_dimension(u, v);
  Vector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] - v[i];
  return out;
}

/// u - <u, d> d for a unit direction d.
inline Vector reject(VectorView u, VectorView d) {
  const double c = dot(u, d);
  Vector out(u.begin(), u.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= c * d[i];
  return out;
}

inline bool all_finite(VectorView v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace embias
