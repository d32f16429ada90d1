#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace cbq {

/// Seeded generator used for every sampled quantity in the library.
///
/// Draws are built directly from the raw 64-bit engine output instead of the
/// standard distributions, whose results differ between standard library
/// implementations. The same seed therefore yields the same numbers everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::complex<double> complex_uniform(double half_width) {
    return {uniform(-half_width, half_width), uniform(-half_width, half_width)};
  }

  /// Uniform index in [0, count).
  std::size_t index(std::size_t count) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(count)) % count;
  }

  bool coin() { return (engine_() >> 63) != 0; }

  Eigen::VectorXcd complex_vector(Eigen::Index n, double half_width) {
    Eigen::VectorXcd v(n);
    for (Eigen::Index k = 0; k < n; ++k) v(k) = complex_uniform(half_width);
    return v;
  }

  Eigen::VectorXd real_vector(Eigen::Index n, double half_width) {
    Eigen::VectorXd v(n);
    for (Eigen::Index k = 0; k < n; ++k) v(k) = uniform(-half_width, half_width);
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cbq
