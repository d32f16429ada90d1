#pragma once

// Explicit point configurations: the real probe lines S_k(t) through a
// non-real point, real unit-step chains, the unit-phi chain that joins a
// non-real point to (i, ..., i), and the polyline from (i, ..., i) to a
// non-real point that stays off R^n.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cbq/geometry.hpp"
#include "cbq/sampling.hpp"

namespace cbq {

/// Index of the coordinate with the largest |Im|, ties to the smallest index.
inline Eigen::Index imaginary_pivot(const Point& x) {
  Eigen::Index j = 0;
  double best = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double m = std::abs(x(k).imag());
    if (m > best) {
      best = m;
      j = k;
    }
  }
  if (best == 0.0) throw NoImaginaryPivot();
  return j;
}

namespace detail {

inline void require_nonreal_multidim(const Point& x, const char* what) {
  if (x.size() < 2) throw DimensionError(std::string(what) + ": requires n >= 2");
  if (is_real(x)) throw NoImaginaryPivot(std::string(what) + ": no imaginary pivot, point is real");
}

}  // namespace detail

/// Real points S_k(t), k != j, through which phi(X, S_k(t)) grows like t^2.
class ProbeFamily {
 public:
  explicit ProbeFamily(const Point& x) : base_(x) {
    detail::require_nonreal_multidim(x, "probe_family");
    a_ = x.real();
    b_ = x.imag();
    pivot_ = imaginary_pivot(x);
    t0_ = std::sqrt(b_.squaredNorm() / (b_(pivot_) * b_(pivot_)));
  }

  const Point& base() const { return base_; }
  Eigen::Index dimension() const { return base_.size(); }
  Eigen::Index pivot() const { return pivot_; }
  double t0() const { return t0_; }

  /// Indices k != pivot.
  std::vector<Eigen::Index> members() const {
    std::vector<Eigen::Index> ks;
    for (Eigen::Index k = 0; k < dimension(); ++k)
      if (k != pivot_) ks.push_back(k);
    return ks;
  }

  RealPoint member(Eigen::Index k, double t) const {
    if (k == pivot_ || k < 0 || k >= dimension())
      throw InputError("probe_family: member index must differ from the pivot");
    RealPoint s = a_;
    s(pivot_) = a_(pivot_) + t * b_(k);
    s(k) = a_(k) - t * b_(pivot_);
    return s;
  }

  /// t^2 (b_j^2 + b_k^2) - sum b_i^2.
  double predicted_phi(Eigen::Index k, double t) const {
    const double bj = b_(pivot_);
    return t * t * (bj * bj + b_(k) * b_(k)) - b_.squaredNorm();
  }

 private:
  Point base_;
  RealPoint a_;
  RealPoint b_;
  Eigen::Index pivot_ = 0;
  double t0_ = 0.0;
};

inline ProbeFamily probe_family(const Point& x) { return ProbeFamily(x); }

// --- chains -----------------------------------------------------------------

enum class ChainKind { RealUnitChain, Lemma4Chain, Lemma5Path };

inline std::string chain_kind_name(ChainKind kind) {
  switch (kind) {
    case ChainKind::RealUnitChain: return "real_unit_chain";
    case ChainKind::Lemma4Chain: return "lemma4_chain";
    case ChainKind::Lemma5Path: return "lemma5_path";
  }
  return "";
}

inline ChainKind chain_kind_from_name(const std::string& name) {
  if (name == "real_unit_chain" || name == "lemma3") return ChainKind::RealUnitChain;
  if (name == "lemma4_chain" || name == "lemma4") return ChainKind::Lemma4Chain;
  if (name == "lemma5_path" || name == "lemma5") return ChainKind::Lemma5Path;
  throw InputError("unknown chain kind: " + name);
}

struct EdgeCertificate {
  Complex phi;
  double psi = 0.0;
};

struct WitnessChain {
  ChainKind kind = ChainKind::RealUnitChain;
  std::vector<Point> points;
  std::vector<EdgeCertificate> certificates;  // one per consecutive pair
};

inline std::vector<EdgeCertificate> edge_certificates(const std::vector<Point>& points) {
  std::vector<EdgeCertificate> certs;
  for (std::size_t k = 1; k < points.size(); ++k)
    certs.push_back({phi(points[k - 1], points[k]), psi(points[k - 1], points[k])});
  return certs;
}

inline WitnessChain make_chain(ChainKind kind, std::vector<Point> points) {
  WitnessChain chain{kind, std::move(points), {}};
  chain.certificates = edge_certificates(chain.points);
  return chain;
}

namespace detail {

/// Unit vector orthogonal to w (|w| = 1): the first standard basis vector
/// with a substantial component off w, Gram-Schmidt against w.
inline RealPoint orthogonal_direction(const RealPoint& w) {
  const Eigen::Index n = w.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    RealPoint u = RealPoint::Unit(n, i) - w(i) * w;
    const double norm = u.norm();
    // Some e_i always has |residual|^2 >= 1 - 1/n >= 1/2.
    if (norm >= 0.5) return u / norm;
  }
  throw SolverError("orthogonal_direction: no basis vector off the given direction");
}

/// Apex M with |P - M| = |M - Q| = 1 for |P - Q| <= 2.
inline RealPoint unit_apex(const RealPoint& p, const RealPoint& q) {
  const RealPoint delta = q - p;
  const double r = delta.norm();
  const RealPoint u = orthogonal_direction(delta / r);
  const double h = std::sqrt(std::max(0.0, 1.0 - r * r / 4.0));
  return 0.5 * (p + q) + h * u;
}

}  // namespace detail

/// Real chain S, P_1, ..., P_m, T with unit steps and m >= 1.
///
/// Waypoints sit on the segment ST every 2 units (the last gap may be
/// shorter); each gap is bridged by one apex at unit distance from both ends.
inline WitnessChain unit_chain(const RealPoint& s, const RealPoint& t) {
  if (s.size() != t.size()) throw DimensionError("unit_chain: dimension mismatch");
  if (s.size() < 2) throw DimensionError("unit_chain: requires n >= 2");

  std::vector<Point> points{complexify(s)};
  const double length = (t - s).norm();
  if (length == 0.0) {
    points.push_back(complexify(s + RealPoint::Unit(s.size(), 0)));
    points.push_back(complexify(t));
    return make_chain(ChainKind::RealUnitChain, std::move(points));
  }

  const auto gaps = std::max<long>(1, static_cast<long>(std::ceil(length / 2.0 - 1e-12)));
  const RealPoint dir = (t - s) / length;
  RealPoint prev = s;
  for (long g = 1; g <= gaps; ++g) {
    const RealPoint next = (g == gaps) ? RealPoint(t) : RealPoint(s + (2.0 * g) * dir);
    points.push_back(complexify(detail::unit_apex(prev, next)));
    points.push_back(complexify(next));
    prev = next;
  }
  return make_chain(ChainKind::RealUnitChain, std::move(points));
}

/// Anchor points S and T of the non-real unit chain for X (pivot j):
/// S has a_j + sqrt(1 + sum_{k != j} b_k^2) at j and
/// a_i + sqrt((1 + (b_j - 1)^2) / (n - 1)) elsewhere; T = sqrt(n) e_j.
struct Lemma4Anchors {
  Eigen::Index pivot = 0;
  RealPoint s;
  RealPoint t;
};

inline Lemma4Anchors lemma4_anchors(const Point& x) {
  detail::require_nonreal_multidim(x, "lemma4_chain");
  const Eigen::Index n = x.size();
  const Eigen::Index j = imaginary_pivot(x);
  const RealPoint a = x.real();
  const RealPoint b = x.imag();
  const double bj = b(j);
  double others = 0.0;
  for (Eigen::Index k = 0; k < n; ++k)
    if (k != j) others += b(k) * b(k);
  const double off_pivot = std::sqrt(1.0 + others);
  const double side = std::sqrt((1.0 + (bj - 1.0) * (bj - 1.0)) / static_cast<double>(n - 1));

  Lemma4Anchors anchors;
  anchors.pivot = j;
  anchors.s = a.array() + side;
  anchors.s(j) = a(j) + off_pivot;
  anchors.t = RealPoint::Zero(n);
  anchors.t(j) = std::sqrt(static_cast<double>(n));
  return anchors;
}

/// X_1 = X, X_2, S + i e_j, P_1 + i e_j, ..., P_m + i e_j, T + i e_j, (i, ..., i).
/// Every step has phi = 1 and psi != 0.
inline WitnessChain lemma4_chain(const Point& x) {
  const Lemma4Anchors anchors = lemma4_anchors(x);
  const Eigen::Index n = x.size();
  const Eigen::Index j = anchors.pivot;
  const Point lift = kI * unit_vector(n, j);

  std::vector<Point> points{x};
  Point x2 = complexify(x.real());
  x2(j) = Complex(anchors.s(j), x(j).imag());
  points.push_back(x2);

  const WitnessChain real_chain = unit_chain(anchors.s, anchors.t);
  for (const Point& p : real_chain.points) points.push_back(p + lift);
  points.push_back(all_i(n));
  return make_chain(ChainKind::Lemma4Chain, std::move(points));
}

/// Expected psi along lemma4_chain(X): b_j^2, b_j, then 1 for the remaining edges.
inline std::vector<double> lemma4_predicted_psi(const Point& x, std::size_t edge_count) {
  const double bj = x(imaginary_pivot(x)).imag();
  std::vector<double> expected(edge_count, 1.0);
  if (edge_count > 0) expected[0] = bj * bj;
  if (edge_count > 1) expected[1] = bj;
  return expected;
}

/// Polyline (i, ..., i) -> Y -> X with Y = sign(b_j) i e_j; both segments avoid R^n.
inline WitnessChain lemma5_path(const Point& x) {
  detail::require_nonreal_multidim(x, "lemma5_path");
  const Eigen::Index j = imaginary_pivot(x);
  const double sign = x(j).imag() > 0.0 ? 1.0 : -1.0;
  Point y = Point::Zero(x.size());
  y(j) = Complex(0.0, sign);
  return make_chain(ChainKind::Lemma5Path, {all_i(x.size()), y, x});
}

// --- verification -----------------------------------------------------------

inline constexpr int kSegmentSamples = 128;
inline constexpr double kPsiFloor = 1e-12;

struct EdgeCheck {
  std::size_t index = 0;  // edge between points[index] and points[index + 1]
  Complex phi;
  double psi = 0.0;
  double phi_residual = 0.0;  // |phi - 1|, or min max|Im| along a path segment
  bool ok = true;
  std::string message;
};

struct ChainReport {
  ChainKind kind = ChainKind::RealUnitChain;
  bool pass = true;
  std::vector<EdgeCheck> edges;
  std::vector<std::string> failures;
};

namespace detail {

/// min over samples of max_k |Im(coordinate_k)| along segment p -> q.
inline double min_imag_along(const Point& p, const Point& q) {
  double worst = std::numeric_limits<double>::infinity();
  for (int s = 0; s <= kSegmentSamples + 1; ++s) {
    const double u = static_cast<double>(s) / (kSegmentSamples + 1);
    const Point z = (1.0 - u) * p + u * q;
    worst = std::min(worst, z.imag().cwiseAbs().maxCoeff());
  }
  return worst;
}

/// Exact test: Im is affine along the segment, so each coordinate vanishes on
/// all of [0, 1], at one parameter, or nowhere. The segment meets R^n iff
/// these zero sets share a parameter.
inline bool segment_meets_real(const Point& p, const Point& q) {
  double lo = 0.0;
  double hi = 1.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    const double a = p(k).imag();
    const double b = q(k).imag();
    if (a == 0.0 && b == 0.0) continue;
    if (a == b) return false;
    const double u = a / (a - b);
    if (u < lo || u > hi) return false;
    lo = hi = u;
  }
  return true;
}

}  // namespace detail

/// Recomputes every certificate from the points and checks the invariants of
/// the chain's kind. Failures are report content, never exceptions.
inline ChainReport verify_chain(const WitnessChain& chain, double tol = Tolerances{}.distance) {
  ChainReport report;
  report.kind = chain.kind;
  auto fail = [&](std::string why) {
    report.pass = false;
    report.failures.push_back(std::move(why));
  };

  if (chain.points.size() < 2) {
    fail("chain has fewer than two points");
    return report;
  }
  const Eigen::Index n = chain.points.front().size();
  for (std::size_t k = 0; k < chain.points.size(); ++k) {
    if (chain.points[k].size() != n) {
      fail("point " + std::to_string(k) + " has the wrong dimension");
      return report;
    }
  }
  const std::size_t edges = chain.points.size() - 1;
  if (!chain.certificates.empty() && chain.certificates.size() != edges) {
    fail("certificate count " + std::to_string(chain.certificates.size()) + " does not match " +
         std::to_string(edges) + " edges");
  }

  if (chain.kind == ChainKind::RealUnitChain) {
    for (std::size_t k = 0; k < chain.points.size(); ++k)
      if (!is_real(chain.points[k])) fail("point " + std::to_string(k) + " is not real");
  }

  for (std::size_t k = 0; k < edges; ++k) {
    const Point& p = chain.points[k];
    const Point& q = chain.points[k + 1];
    EdgeCheck e;
    e.index = k;
    e.phi = phi(p, q);
    e.psi = psi(p, q);
    if (chain.kind == ChainKind::Lemma5Path) {
      e.phi_residual = detail::min_imag_along(p, q);
      if (!(e.phi_residual > 0.0) || detail::segment_meets_real(p, q)) {
        e.ok = false;
        e.message = "segment meets R^n";
      }
    } else {
      e.phi_residual = std::abs(e.phi - Complex(1.0));
      if (e.phi_residual > tol) {
        e.ok = false;
        e.message = "phi != 1";
      } else if (chain.kind == ChainKind::Lemma4Chain && std::abs(e.psi) <= kPsiFloor) {
        e.ok = false;
        e.message = "psi == 0";
      }
    }
    if (e.ok && chain.certificates.size() == edges) {
      const EdgeCertificate& stored = chain.certificates[k];
      if (std::abs(stored.phi - e.phi) > tol * phi_scale(p, q) ||
          std::abs(stored.psi - e.psi) > tol * (1.0 + std::abs(e.psi))) {
        e.ok = false;
        e.message = "stored certificate does not match";
      }
    }
    if (!e.ok) fail("edge " + std::to_string(k) + ": " + e.message);
    report.edges.push_back(std::move(e));
  }
  return report;
}

}  // namespace cbq
