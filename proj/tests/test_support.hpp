#pragma once

// Test-only oracles. These recompute quantities from their definitions with
// plain loops over std::complex, independently of the library code paths.

#include <complex>
#include <vector>

#include "cbq/geometry.hpp"

namespace cbq::testing {

inline Point pt(std::initializer_list<Complex> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index k = 0;
  for (const Complex c : coords) p(k++) = c;
  return p;
}

inline Complex phi_oracle(const Point& x, const Point& y) {
  Complex sum = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const Complex d = x(k) - y(k);
    sum += d * d;
  }
  return sum;
}

inline Point conj_oracle(const Point& x) {
  Point y(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) y(k) = Complex(x(k).real(), -x(k).imag());
  return y;
}

/// Entry-by-entry Q^T Q.
inline ComplexMatrix gram_oracle(const ComplexMatrix& q) {
  const Eigen::Index n = q.cols();
  ComplexMatrix g(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (Eigen::Index k = 0; k < q.rows(); ++k) s += q(k, r) * q(k, c);
      g(r, c) = s;
    }
  return g;
}

inline double max_abs(const Point& x) { return x.size() ? x.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace cbq::testing
