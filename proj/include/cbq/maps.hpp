#pragma once

#include <string>
#include <variant>

#include "cbq/geometry.hpp"

namespace cbq {

namespace rho {
struct Identity {
  bool operator==(const Identity&) const = default;
};
struct Conjugation {
  bool operator==(const Conjugation&) const = default;
};
/// x -> (d / conj(d)) * conj(x); preserves the squared distance d^2.
struct ScaledConjugation {
  Complex d;
  bool operator==(const ScaledConjugation&) const = default;
};
}  // namespace rho

/// The scalar field map applied componentwise before the affine part.
using RhoTag = std::variant<rho::Identity, rho::Conjugation, rho::ScaledConjugation>;

inline bool is_identity(const RhoTag& r) { return std::holds_alternative<rho::Identity>(r); }

inline rho::ScaledConjugation scaled_conjugation(Complex d) {
  if (d == Complex(0.0)) throw InputError("tau_d requires d != 0");
  return {d};
}

/// Unit factor d / conj(d) of a conjugation-type tag (1 for plain conjugation).
inline Complex conjugation_factor(const RhoTag& r) {
  if (const auto* s = std::get_if<rho::ScaledConjugation>(&r)) return s->d / std::conj(s->d);
  return 1.0;
}

inline Complex apply_rho(const RhoTag& r, Complex x) {
  if (is_identity(r)) return x;
  return conjugation_factor(r) * std::conj(x);
}

inline Point apply_rho(const RhoTag& r, const Point& x) {
  if (is_identity(r)) return x;
  return conjugation_factor(r) * x.conjugate();
}

/// The phi value a semi-affine map with this tag must produce from phi(X, Y).
inline Complex rho_phi_law(const RhoTag& r, Complex phi_xy) {
  if (is_identity(r)) return phi_xy;
  const Complex c = conjugation_factor(r);
  return c * c * std::conj(phi_xy);
}

/// Same action on C; ScaledConjugation(d) with d / conj(d) = 1 acts as Conjugation.
inline bool rho_equivalent(const RhoTag& a, const RhoTag& b, double tol = 1e-12) {
  if (is_identity(a) || is_identity(b)) return is_identity(a) && is_identity(b);
  return std::abs(conjugation_factor(a) - conjugation_factor(b)) <= tol;
}

inline std::string rho_name(const RhoTag& r) {
  if (is_identity(r)) return "id";
  if (std::holds_alternative<rho::Conjugation>(r)) return "conj";
  return "tau_d";
}

/// X -> qX + b with q complex orthogonal.
class AffineOrthogonalMap {
 public:
  AffineOrthogonalMap() = default;

  /// Validates q against the orthogonality tolerance.
  AffineOrthogonalMap(ComplexMatrix q, Point b, double ortho_tol = Tolerances{}.ortho)
      : q_(std::move(q)), b_(std::move(b)) {
    if (q_.rows() != b_.size()) {
      throw DimensionError("AffineOrthogonalMap: q is " + std::to_string(q_.rows()) +
                           "x" + std::to_string(q_.cols()) + " but b has length " +
                           std::to_string(b_.size()));
    }
    const auto check = is_complex_orthogonal(q_, ortho_tol);
    if (!check.orthogonal) {
      throw InputError("AffineOrthogonalMap: linear part not orthogonal (residual " +
                       std::to_string(check.residual) + ")");
    }
  }

  static AffineOrthogonalMap identity(Eigen::Index n) {
    return {ComplexMatrix::Identity(n, n), Point::Zero(n)};
  }

  Eigen::Index dimension() const { return b_.size(); }
  const ComplexMatrix& q() const { return q_; }
  const Point& b() const { return b_; }

  Point operator()(const Point& x) const {
    detail::require_same_dimension(x, b_, "AffineOrthogonalMap");
    return q_ * x + b_;
  }

  /// q^T (X - b), the inverse map.
  Point inverse(const Point& x) const {
    detail::require_same_dimension(x, b_, "AffineOrthogonalMap::inverse");
    return q_.transpose() * (x - b_);
  }

 private:
  ComplexMatrix q_;
  Point b_;
};

/// outer o (rho, ..., rho).
struct SemiAffineMap {
  RhoTag rho = rho::Identity{};
  AffineOrthogonalMap outer;

  Eigen::Index dimension() const { return outer.dimension(); }
  Point operator()(const Point& x) const { return outer(apply_rho(rho, x)); }
};

}  // namespace cbq
