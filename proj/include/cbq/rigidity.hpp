#pragma once

// Forcing the image of a non-real point, and transporting fixed/conjugated
// labels along unit-phi chains.
//
// For a map that fixes R^n pointwise and preserves phi against the real
// probes S_k(t), the image Y of X satisfies, for every k != j and t > t0,
//
//   sum y_i^2 - 2 S_k(t) . y + |S_k(t)|^2 = phi(X, S_k(t)).
//
// Two instances t1 != t2 of the same k differ by a linear equation in
// (y_j, y_k); these pin y_k = a_k + (b_k / b_j)(y_j - a_j). Substituting into
// one full instance leaves a quadratic in y_j with roots a_j +- b_j i.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cbq/geometry.hpp"
#include "cbq/witnesses.hpp"

namespace cbq {

struct CandidatePair {
  Point original;    // the candidate equal to X
  Point conjugated;  // the candidate equal to conj(X)
  /// Roots for y_j, ordered (+b_j i, -b_j i) relative to a_j. The + root
  /// builds `original` unless rounding says otherwise, then the candidates swap.
  std::array<Complex, 2> pivot_roots;
  Eigen::Index pivot = 0;
  double t0 = 0.0;
  std::array<double, 2> t_values{};
  /// A y_j^2 + B y_j + C = 0 after back-substitution.
  std::array<Complex, 3> quadratic{};
};

namespace detail {

/// sum y_i^2 + linear . y + constant = 0
struct ProbeConstraint {
  RealPoint linear;
  Complex constant;
};

inline ProbeConstraint probe_constraint(const Point& x, const RealPoint& s) {
  return {-2.0 * s, s.squaredNorm() - phi(x, complexify(s))};
}

/// Both roots of a z^2 + b z + c = 0 without cancellation.
inline std::array<Complex, 2> quadratic_roots(Complex a, Complex b, Complex c) {
  Complex root = std::sqrt(b * b - 4.0 * a * c);
  if ((std::conj(b) * root).real() < 0.0) root = -root;
  const Complex q = -0.5 * (b + root);
  if (q == Complex(0.0)) return {Complex(0.0), Complex(0.0)};
  return {q / a, c / q};
}

}  // namespace detail

/// Solves the probe constraints for the image of a non-real X. Returns the
/// candidates {X, conj X}, derived from the constraint algebra alone.
inline CandidatePair theorem1_candidates(const Point& x, double first_offset = 1.0,
                                         double second_offset = 2.0) {
  if (x.size() >= 2 && is_real(x)) {
    throw NoImaginaryPivot("underdetermined: real points are fixed by hypothesis");
  }
  if (first_offset == second_offset || first_offset <= 0.0 || second_offset <= 0.0) {
    throw InputError("theorem1_candidates: need two distinct offsets above t0");
  }
  const ProbeFamily family(x);
  const Eigen::Index n = x.size();
  const Eigen::Index j = family.pivot();
  const double t1 = family.t0() + first_offset;
  const double t2 = family.t0() + second_offset;

  // y = alpha * y_j + beta
  Point alpha = Point::Zero(n);
  Point beta = Point::Zero(n);
  alpha(j) = 1.0;
  for (const Eigen::Index k : family.members()) {
    const auto c1 = detail::probe_constraint(x, family.member(k, t1));
    const auto c2 = detail::probe_constraint(x, family.member(k, t2));
    const RealPoint dl = c1.linear - c2.linear;
    const Complex dc = c1.constant - c2.constant;
    // dl_j y_j + dl_k y_k + dc = 0; dl_k = 2 (t1 - t2) b_j != 0.
    alpha(k) = -dl(j) / dl(k);
    beta(k) = -dc / dl(k);
  }

  const Eigen::Index k0 = family.members().front();
  const auto full = detail::probe_constraint(x, family.member(k0, t1));
  const Point lin = complexify(full.linear);
  const Complex qa = alpha.array().square().sum();
  const Complex qb = (2.0 * alpha.array() * beta.array() + lin.array() * alpha.array()).sum();
  const Complex qc = (beta.array().square() + lin.array() * beta.array()).sum() + full.constant;
  auto roots = detail::quadratic_roots(qa, qb, qc);

  if ((roots[0].imag() - roots[1].imag()) * x(j).imag() < 0.0) std::swap(roots[0], roots[1]);

  CandidatePair out;
  out.pivot = j;
  out.t0 = family.t0();
  out.t_values = {t1, t2};
  out.quadratic = {qa, qb, qc};
  out.pivot_roots = roots;
  out.original = alpha * roots[0] + beta;
  out.conjugated = alpha * roots[1] + beta;
  if (max_abs_diff(out.original, x) > max_abs_diff(out.conjugated, x)) {
    std::swap(out.original, out.conjugated);
  }
  return out;
}

/// max over k != j and t of |phi(Y, S_k(t)) - phi(X, S_k(t))|.
inline double forcing_residual(const Point& x, const Point& y, const std::vector<double>& t_values) {
  detail::require_same_dimension(x, y, "forcing_residual");
  const ProbeFamily family(x);
  double worst = 0.0;
  for (const Eigen::Index k : family.members()) {
    for (const double t : t_values) {
      const Point s = complexify(family.member(k, t));
      worst = std::max(worst, std::abs(phi(y, s) - phi(x, s)));
    }
  }
  return worst;
}

/// Residual at the default probes t0 + 1 and t0 + 2.
inline double forcing_residual(const Point& x, const Point& y) {
  const double t0 = probe_family(x).t0();
  return forcing_residual(x, y, {t0 + 1.0, t0 + 2.0});
}

// --- labels -----------------------------------------------------------------

/// A: fixed by the map. B: sent to its conjugate.
enum class Label { A, B };

inline std::string label_name(Label l) { return l == Label::A ? "A" : "B"; }

inline Label label_from_name(const std::string& s) {
  if (s == "A" || s == "a") return Label::A;
  if (s == "B" || s == "b") return Label::B;
  throw InputError("unknown label: " + s);
}

/// Label of X under g, if g(X) is X or conj(X) within tol (relative to |X|).
inline std::optional<Label> observed_label(const Point& x, const Point& gx, double tol) {
  const double scale = 1.0 + x.cwiseAbs().maxCoeff();
  if (max_abs_diff(gx, x) <= tol * scale) return Label::A;
  if (max_abs_diff(gx, conjugate_point(x)) <= tol * scale) return Label::B;
  return std::nullopt;
}

struct PropagationStep {
  std::size_t edge = 0;
  Complex phi;
  double psi = 0.0;
};

struct LabelPropagation {
  Label head = Label::A;
  std::vector<PropagationStep> steps;  // tail to head
};

/// Carries the label of the last point back to the first. Each edge needs
/// phi = 1 and psi != 0: a map preserving phi cannot fix one end of such a
/// pair and conjugate the other.
inline LabelPropagation propagate_label(const WitnessChain& chain, Label tail_label,
                                        double tol = Tolerances{}.distance) {
  if (chain.points.size() < 2) throw InputError("propagate_label: chain has fewer than two points");
  LabelPropagation out;
  out.head = tail_label;
  for (std::size_t e = chain.points.size() - 1; e-- > 0;) {
    const Point& p = chain.points[e];
    const Point& q = chain.points[e + 1];
    const Complex ph = phi(p, q);
    const double ps = psi(p, q);
    if (std::abs(ph - Complex(1.0)) > tol) {
      throw PropagationError("propagation not licensed at edge " + std::to_string(e) +
                                 ": phi != 1",
                             e);
    }
    if (std::abs(ps) <= kPsiFloor) {
      throw PropagationError("propagation not licensed at edge " + std::to_string(e) +
                                 ": psi == 0",
                             e);
    }
    out.steps.push_back({e, ph, ps});
  }
  return out;
}

}  // namespace cbq
