#pragma once

#include "cbq/geometry.hpp"
#include "cbq/random.hpp"

namespace cbq {

/// Random v with phi(v, 0) = 1: a random complex vector rescaled by
/// 1 / sqrt(phi(v, 0)). Near-isotropic draws (|phi| < 1e-6) are rejected.
/// For n = 1 this always returns +1 or -1.
inline Point random_unit_direction(Rng& rng, Eigen::Index n) {
  for (;;) {
    Point v = rng.complex_vector(n, 1.0);
    const Complex q = v.array().square().sum();
    if (std::abs(q) < 1e-6) continue;
    return v / std::sqrt(q);
  }
}

/// Random point with real and imaginary parts in [-half_width, half_width].
inline Point random_point(Rng& rng, Eigen::Index n, double half_width = 2.0) {
  return rng.complex_vector(n, half_width);
}

/// Random point with max |Im| >= min_imag.
inline Point random_nonreal_point(Rng& rng, Eigen::Index n, double half_width = 2.0,
                                  double min_imag = 0.1) {
  for (;;) {
    Point p = random_point(rng, n, half_width);
    if (p.imag().cwiseAbs().maxCoeff() >= min_imag) return p;
  }
}

/// Magnitude used to scale absolute tolerances on phi(X, Y).
inline double phi_scale(const Point& x, const Point& y) { return 1.0 + (x - y).squaredNorm(); }

}  // namespace cbq
