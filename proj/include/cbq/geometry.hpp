#pragma once

// Complex quadratic-form geometry on C^n.
//
// The "squared distance" here is the bilinear form sum (x_i - y_i)^2 with
// complex squares and no conjugation. It is invariant under the complex
// orthogonal group (Q^T Q = Id, plain transpose), can be negative or
// non-real, and vanishes on isotropic pairs X != Y.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "cbq/errors.hpp"
#include "cbq/random.hpp"

namespace cbq {

using Complex = std::complex<double>;
using Point = Eigen::VectorXcd;
using RealPoint = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Tolerance defaults shared by every module.
struct Tolerances {
  double distance = 1e-9;
  double ortho = 1e-8;
};

namespace detail {

inline void require_same_dimension(const Point& x, const Point& y, const char* what) {
  if (x.size() != y.size()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
  }
}

}  // namespace detail

inline RealPoint real_part(const Point& x) { return x.real(); }
inline RealPoint imag_part(const Point& x) { return x.imag(); }

inline Point complexify(const RealPoint& x) { return x.cast<Complex>(); }

inline Point make_point(const RealPoint& re, const RealPoint& im) {
  Point p(re.size());
  for (Eigen::Index k = 0; k < re.size(); ++k) p(k) = Complex(re(k), im(k));
  return p;
}

/// True when every coordinate has exactly zero imaginary part.
inline bool is_real(const Point& x) { return (x.imag().array() == 0.0).all(); }

/// (i, ..., i): the anchor point of the conjugation dichotomy.
inline Point all_i(Eigen::Index n) { return Point::Constant(n, kI); }

inline Point unit_vector(Eigen::Index n, Eigen::Index k) {
  Point e = Point::Zero(n);
  e(k) = 1.0;
  return e;
}

/// phi(X, Y) = sum (x_i - y_i)^2.
inline Complex phi(const Point& x, const Point& y) {
  detail::require_same_dimension(x, y, "phi");
  return (x - y).array().square().sum();
}

/// psi(X, Y) = sum Im(x_k) Im(y_k).
inline double psi(const Point& x, const Point& y) {
  detail::require_same_dimension(x, y, "psi");
  return x.imag().dot(y.imag());
}

/// Componentwise complex conjugation.
inline Point conjugate_point(const Point& x) { return x.conjugate(); }

/// phi(X, Y) - phi(conj X, Y), evaluated through its closed form
/// 4 sum b_k b~_k + 4i sum b_k (a_k - a~_k), where X = a + bi and Y = a~ + b~i.
inline Complex conjugation_defect(const Point& x, const Point& y) {
  detail::require_same_dimension(x, y, "conjugation_defect");
  const RealPoint b = x.imag();
  const double re = 4.0 * b.dot(y.imag());
  const double im = 4.0 * b.dot(x.real() - y.real());
  return {re, im};
}

/// Hermitian norm, used only to scale tolerances.
inline double magnitude(const Point& x) { return x.norm(); }

inline double max_abs_diff(const Point& x, const Point& y) {
  detail::require_same_dimension(x, y, "max_abs_diff");
  if (x.size() == 0) return 0.0;
  return (x - y).cwiseAbs().maxCoeff();
}

struct OrthogonalityCheck {
  bool orthogonal = false;
  double residual = 0.0;  // max |(Q^T Q - Id)_{ij}|
};

inline OrthogonalityCheck is_complex_orthogonal(const ComplexMatrix& q, double tol) {
  if (q.rows() != q.cols()) {
    throw DimensionError("is_complex_orthogonal: matrix is " + std::to_string(q.rows()) + "x" +
                         std::to_string(q.cols()) + ", expected square");
  }
  if (q.size() == 0) return {true, 0.0};
  const ComplexMatrix gram = q.transpose() * q;
  const double residual =
      (gram - ComplexMatrix::Identity(q.rows(), q.cols())).cwiseAbs().maxCoeff();
  return {residual <= tol, residual};
}

/// exp(A) by scaling and squaring around a fixed 12-term Taylor series.
inline ComplexMatrix matrix_exp(const ComplexMatrix& a) {
  constexpr int kTerms = 12;
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const ComplexMatrix scaled = a / std::ldexp(1.0, squarings);

  const Eigen::Index n = a.rows();
  ComplexMatrix result = ComplexMatrix::Identity(n, n);
  ComplexMatrix term = ComplexMatrix::Identity(n, n);
  for (int k = 1; k <= kTerms; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

/// Random complex orthogonal matrix exp(A), A antisymmetric with |A_ij| <= scale.
/// Deterministic per seed.
inline ComplexMatrix random_complex_orthogonal(Eigen::Index n, std::uint64_t seed,
                                               double scale = 1.0) {
  if (n < 1) throw DimensionError("random_complex_orthogonal: n must be >= 1");
  if (!(scale >= 0.0)) throw InputError("random_complex_orthogonal: scale must be >= 0");
  Rng rng(seed);
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  const double half_width = scale / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Complex entry = rng.complex_uniform(half_width);
      a(i, j) = entry;
      a(j, i) = -entry;
    }
  }
  return matrix_exp(a);
}

}  // namespace cbq
