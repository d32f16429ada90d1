#pragma once

// Decomposes a map C^n -> C^n into I o (rho, ..., rho) with I affine and
// complex orthogonal, or returns a concrete pair whose phi it fails to keep.
//
// Standing hypothesis: the map preserves every positive distance (for n >= 2
// that is what continuity plus unit-distance preservation buys). Continuity
// cannot be decided from samples, so it is assumed rather than checked.
//
//   1. I is fitted on the real points 0, e_k, e_j + e_k.
//   2. g = I^{-1} o f must send (i, ..., i) to itself or to its conjugate.
//   3. The choice is validated on random points and random unit-phi pairs.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cbq/map_spec.hpp"
#include "cbq/rigidity.hpp"
#include "cbq/sampling.hpp"
#include "cbq/witnesses.hpp"

namespace cbq {

/// phi(x, y) is expected_phi, but phi(f x, f y) came out as observed_phi.
struct Witness {
  Point x;
  Point y;
  Complex expected_phi;
  Complex observed_phi;
};

struct Rigid {
  RhoTag rho;
  AffineOrthogonalMap outer;
};

struct NotRigid {
  Witness witness;
  std::string reason;
};

struct Residuals {
  double ortho = 0.0;  // max |q^T q - Id|
  double fit = 0.0;    // affinity spot-check on e_j + e_k
  double probe = 0.0;  // worst normalized validation residual
};

struct ClassificationReport {
  std::variant<Rigid, NotRigid> verdict;
  Residuals residuals;
  int probes_used = 0;

  bool rigid() const { return std::holds_alternative<Rigid>(verdict); }
  const Rigid& as_rigid() const { return std::get<Rigid>(verdict); }
  const NotRigid& as_not_rigid() const { return std::get<NotRigid>(verdict); }
};

struct ClassifyOptions {
  double tol = Tolerances{}.distance;
  double ortho_tol = Tolerances{}.ortho;
  int validation = 256;
  std::uint64_t seed = 0;
};

namespace detail {

using Evaluator = std::function<Point(const Point&)>;

class CountingMap {
 public:
  explicit CountingMap(Evaluator f) : f_(std::move(f)) {}
  Point operator()(const Point& x) {
    ++calls_;
    return f_(x);
  }
  int calls() const { return calls_; }

 private:
  Evaluator f_;
  int calls_ = 0;
};

/// Normalized |phi(fX, fY) - expected|.
inline double phi_mismatch(const Point& fx, const Point& fy, Complex expected) {
  return std::abs(phi(fx, fy) - expected) / phi_scale(fx, fy);
}

/// Among candidate pairs, the first unit-phi pair whose image misses by more
/// than tol; failing that, the pair with the largest miss.
inline Witness pick_witness(CountingMap& f, const std::vector<std::pair<Point, Point>>& pairs,
                            double tol) {
  Witness best;
  double best_miss = -1.0;
  for (const auto& [x, y] : pairs) {
    const Complex expected = phi(x, y);
    const Point fx = f(x);
    const Point fy = f(y);
    const double miss = phi_mismatch(fx, fy, expected);
    const Witness w{x, y, expected, phi(fx, fy)};
    if (std::abs(expected - Complex(1.0)) <= 1e-12 && miss > tol) return w;
    if (miss > best_miss) {
      best_miss = miss;
      best = w;
    }
  }
  return best;
}

/// Positive-phi pairs that expose a point whose image is neither X nor conj X:
/// the unit pairs (i e_j + sqrt2 e_k, 0), the same offsets anchored at X, and
/// X against its real probes S_k(t).
inline std::vector<std::pair<Point, Point>> witness_candidates(const Point& x) {
  const Eigen::Index n = x.size();
  std::vector<std::pair<Point, Point>> pairs;
  std::vector<Point> offsets;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k)
      if (j != k) offsets.push_back(kI * unit_vector(n, j) + std::sqrt(2.0) * unit_vector(n, k));
  for (const Point& v : offsets) pairs.emplace_back(v, Point::Zero(n));
  for (const Point& v : offsets) pairs.emplace_back(x + v, x);
  if (!is_real(x)) {
    const ProbeFamily family(x);
    for (const Eigen::Index k : family.members())
      for (const double dt : {1.0, 2.0})
        pairs.emplace_back(x, complexify(family.member(k, family.t0() + dt)));
  }
  return pairs;
}

struct AffineFit {
  ComplexMatrix q;
  Point b;
  Residuals residuals;
  std::optional<std::string> failure;
  std::vector<Point> fit_points;
};

inline AffineFit fit_affine(CountingMap& f, Eigen::Index n, double ortho_tol) {
  AffineFit fit;
  const Point origin = Point::Zero(n);
  fit.b = f(origin);
  fit.q = ComplexMatrix(n, n);
  fit.fit_points.push_back(origin);
  for (Eigen::Index k = 0; k < n; ++k) {
    fit.q.col(k) = f(unit_vector(n, k)) - fit.b;
    fit.fit_points.push_back(unit_vector(n, k));
  }
  const auto ortho = is_complex_orthogonal(fit.q, ortho_tol);
  fit.residuals.ortho = ortho.residual;
  if (!ortho.orthogonal) {
    fit.failure = "real restriction not orthogonal-affine (residual " +
                  std::to_string(ortho.residual) + ")";
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const Point p = unit_vector(n, j) + unit_vector(n, k);
      const Point fp = f(p);
      const Point predicted = fit.q * p + fit.b;
      const double miss = max_abs_diff(fp, predicted) / (1.0 + fp.cwiseAbs().maxCoeff());
      fit.residuals.fit = std::max(fit.residuals.fit, miss);
      fit.fit_points.push_back(p);
    }
  }
  if (!fit.failure && fit.residuals.fit > ortho_tol) {
    fit.failure = "not affine on R^n (spot-check residual " + std::to_string(fit.residuals.fit) + ")";
  }
  return fit;
}

inline std::vector<std::pair<Point, Point>> all_pairs(const std::vector<Point>& points) {
  std::vector<std::pair<Point, Point>> pairs;
  for (std::size_t a = 0; a < points.size(); ++a)
    for (std::size_t b = a + 1; b < points.size(); ++b) pairs.emplace_back(points[a], points[b]);
  return pairs;
}

inline RhoTag rho_for(Label l) {
  return l == Label::A ? RhoTag{rho::Identity{}} : RhoTag{rho::Conjugation{}};
}

inline Label label_for(const RhoTag& r) { return is_identity(r) ? Label::A : Label::B; }

/// Core of the unit classification. sample_inputs, when given, replaces the
/// random validation points (tabulated maps can only be probed there).
inline ClassificationReport classify_unit_impl(Evaluator fn, Eigen::Index n,
                                               const ClassifyOptions& opt,
                                               const std::vector<Point>* sample_inputs) {
  if (n < 2) throw DimensionError("classify_unit: n = 1 is handled by classify_dim1");
  CountingMap f(std::move(fn));
  ClassificationReport report;
  auto finish = [&](std::variant<Rigid, NotRigid> v) {
    report.verdict = std::move(v);
    report.probes_used = f.calls();
    return report;
  };

  AffineFit fit = fit_affine(f, n, opt.ortho_tol);
  report.residuals = fit.residuals;
  if (fit.failure) {
    return finish(NotRigid{pick_witness(f, all_pairs(fit.fit_points), opt.tol), *fit.failure});
  }
  const AffineOrthogonalMap outer(fit.q, fit.b, opt.ortho_tol);
  auto g = [&](const Point& x) { return outer.inverse(f(x)); };
  // A table can only be queried at its own inputs.
  auto candidates = [&](const Point& x) {
    return sample_inputs ? all_pairs(*sample_inputs) : witness_candidates(x);
  };

  const Point anchor = all_i(n);
  const auto anchor_label = observed_label(anchor, g(anchor), opt.tol);
  if (!anchor_label) {
    return finish(NotRigid{pick_witness(f, candidates(anchor), opt.tol),
                           "image of (i, ..., i) is neither itself nor its conjugate"});
  }
  const RhoTag rho = rho_for(*anchor_label);

  auto check_point = [&](const Point& x) -> std::optional<NotRigid> {
    const Point gx = g(x);
    const Point want = apply_rho(rho, x);
    const double miss = max_abs_diff(gx, want) / (1.0 + x.cwiseAbs().maxCoeff());
    report.residuals.probe = std::max(report.residuals.probe, miss);
    if (miss <= opt.tol) return std::nullopt;
    return NotRigid{pick_witness(f, candidates(x), opt.tol),
                    "point not mapped by the same rho as (i, ..., i)"};
  };
  auto check_pair = [&](const Point& x, const Point& y) -> std::optional<NotRigid> {
    const Complex expected = rho_phi_law(rho, phi(x, y));
    const Point fx = f(x);
    const Point fy = f(y);
    const double miss = phi_mismatch(fx, fy, expected);
    report.residuals.probe = std::max(report.residuals.probe, miss);
    if (miss <= opt.tol) return std::nullopt;
    return NotRigid{{x, y, phi(x, y), phi(fx, fy)}, "pair breaks the phi law of rho"};
  };

  if (sample_inputs) {
    // Pairs first: a broken pair is a better witness than a sample pair
    // picked after the fact.
    for (const auto& [x, y] : all_pairs(*sample_inputs))
      if (auto bad = check_pair(x, y)) return finish(std::move(*bad));
    for (const Point& x : *sample_inputs)
      if (auto bad = check_point(x)) return finish(std::move(*bad));
  } else {
    Rng rng(opt.seed);
    for (int v = 0; v < opt.validation; ++v)
      if (auto bad = check_point(random_point(rng, n))) return finish(std::move(*bad));
    for (int v = 0; v < opt.validation; ++v) {
      const Point x = random_point(rng, n);
      if (auto bad = check_pair(x, x + random_unit_direction(rng, n))) return finish(std::move(*bad));
    }
  }
  return finish(Rigid{rho, outer});
}

inline Evaluator evaluator(const MapSpec& spec) {
  return [&spec](const Point& x) { return apply_map(spec, x); };
}

inline std::optional<std::vector<Point>> tabulated_inputs(const MapSpec& spec) {
  if (const auto* t = std::get_if<TabulatedMap>(&spec)) {
    std::vector<Point> inputs;
    for (const auto& s : t->samples) inputs.push_back(s.first);
    return inputs;
  }
  return std::nullopt;
}

inline void require_dimension(const MapSpec& f, Eigen::Index n) {
  if (dimension(f) != n) {
    throw DimensionError("map has dimension " + std::to_string(dimension(f)) + ", expected " +
                         std::to_string(n));
  }
}

}  // namespace detail

/// b = f(0), q e_k = f(e_k) - f(0), checked for orthogonality and against
/// f(e_j + e_k).
inline AffineOrthogonalMap fit_real_restriction(const MapSpec& f, Eigen::Index n,
                                                double ortho_tol = Tolerances{}.ortho) {
  detail::require_dimension(f, n);
  detail::CountingMap counted(detail::evaluator(f));
  const detail::AffineFit fit = detail::fit_affine(counted, n, ortho_tol);
  if (fit.failure) {
    throw FitError(*fit.failure, std::max(fit.residuals.ortho, fit.residuals.fit));
  }
  return {fit.q, fit.b, ortho_tol};
}

inline ClassificationReport classify_unit(const MapSpec& f, Eigen::Index n,
                                          const ClassifyOptions& opt = {}) {
  detail::require_dimension(f, n);
  const auto inputs = detail::tabulated_inputs(f);
  return detail::classify_unit_impl(detail::evaluator(f), n, opt, inputs ? &*inputs : nullptr);
}

/// Classifies under preservation of phi = d^2 through h(X) = f(dX) / d, which
/// preserves unit distance. A conjugating h turns into tau_d for f.
inline ClassificationReport classify_distance_d(const MapSpec& f, Eigen::Index n, Complex d,
                                                const ClassifyOptions& opt = {}) {
  if (d == Complex(0.0)) throw InputError("classify_distance_d: d = 0 is unsupported");
  detail::require_dimension(f, n);
  auto h = [&f, d](const Point& x) -> Point { return apply_map(f, (d * x).eval()) / d; };

  std::optional<std::vector<Point>> inputs = detail::tabulated_inputs(f);
  if (inputs)
    for (Point& p : *inputs) p /= d;
  ClassificationReport hr =
      detail::classify_unit_impl(h, n, opt, inputs ? &*inputs : nullptr);

  ClassificationReport report;
  report.residuals = hr.residuals;
  report.probes_used = hr.probes_used;
  if (!hr.rigid()) {
    NotRigid nr = hr.as_not_rigid();
    Witness& w = nr.witness;
    w.x *= d;
    w.y *= d;
    w.expected_phi = phi(w.x, w.y);
    w.observed_phi = phi(apply_map(f, w.x), apply_map(f, w.y));
    report.verdict = std::move(nr);
    return report;
  }
  const Rigid& hrig = hr.as_rigid();
  const RhoTag rho = is_identity(hrig.rho) ? RhoTag{rho::Identity{}} : RhoTag{scaled_conjugation(d)};
  const AffineOrthogonalMap outer(hrig.outer.q(), d * hrig.outer.b(), opt.ortho_tol);

  if (!inputs) {
    Rng rng(opt.seed ^ 0x5bd1e995ULL);
    const Complex d2 = d * d;
    for (int v = 0; v < opt.validation; ++v) {
      const Point x = random_point(rng, n);
      const Point y = x + d * random_unit_direction(rng, n);
      const Point fx = apply_map(f, x);
      const Point fy = apply_map(f, y);
      ++report.probes_used;
      const double miss = detail::phi_mismatch(fx, fy, d2);
      report.residuals.probe = std::max(report.residuals.probe, miss);
      if (miss > opt.tol) {
        report.verdict = NotRigid{{x, y, phi(x, y), phi(fx, fy)}, "pair at distance d not preserved"};
        return report;
      }
    }
  }
  report.verdict = Rigid{rho, outer};
  return report;
}

/// True iff tau_{d1} preserves distance d2, i.e. d1^2 / d2^2 is real.
inline bool tau_d_preserves(Complex d1, Complex d2) {
  if (d1 == Complex(0.0) || d2 == Complex(0.0)) throw InputError("tau_d_preserves: zero distance");
  const Complex ratio = (d1 * d1) / (d2 * d2);
  return std::abs(ratio.imag()) <= 1e-12 * std::max(1.0, std::abs(ratio));
}

/// n = 1 under the hypothesis that every pair with real phi keeps its phi.
inline ClassificationReport classify_dim1(const MapSpec& spec, const ClassifyOptions& opt = {}) {
  detail::require_dimension(spec, 1);
  detail::CountingMap f(detail::evaluator(spec));
  ClassificationReport report;
  auto finish = [&](std::variant<Rigid, NotRigid> v) {
    report.verdict = std::move(v);
    report.probes_used = f.calls();
    return report;
  };
  auto one = [](Complex z) { return Point::Constant(1, z); };

  const Point f0 = f(one(0.0));
  const Point f1 = f(one(1.0));
  const Complex q = f1(0) - f0(0);
  report.residuals.ortho = std::abs(q * q - Complex(1.0));
  if (report.residuals.ortho > opt.ortho_tol) {
    return finish(NotRigid{{one(1.0), one(0.0), 1.0, q * q}, "f(1) - f(0) is not +-1"});
  }
  const AffineOrthogonalMap outer(ComplexMatrix::Constant(1, 1, q), f0, opt.ortho_tol);
  auto g = [&](const Point& x) { return outer.inverse(f(x)); };

  const auto inputs = detail::tabulated_inputs(spec);
  std::vector<std::pair<Point, Point>> sample_pairs;
  if (inputs) {
    for (const auto& [x, y] : detail::all_pairs(*inputs)) {
      const Complex p = phi(x, y);
      if (std::abs(p.imag()) <= 1e-12 * (1.0 + std::abs(p))) sample_pairs.emplace_back(x, y);
    }
  }

  // Pairs with real phi around x: real and purely imaginary offsets.
  auto real_phi_pairs = [&](const Point& x) {
    if (inputs) return sample_pairs;
    std::vector<std::pair<Point, Point>> pairs{{one(kI), one(0.0)}};
    for (const Complex off : {Complex(0, 1), Complex(1, 0), Complex(0, -1), Complex(-1, 0)})
      pairs.emplace_back(x + one(off), x);
    if (x(0).imag() != 0.0) pairs.emplace_back(x, one(x(0).real()));
    return pairs;
  };

  const Point anchor = one(kI);
  const auto label = observed_label(anchor, g(anchor), opt.tol);
  if (!label) {
    return finish(NotRigid{detail::pick_witness(f, real_phi_pairs(anchor), opt.tol),
                           "image of i is neither i nor -i after removing the affine part"});
  }
  const RhoTag rho = detail::rho_for(*label);

  auto check_point = [&](const Point& x) -> std::optional<NotRigid> {
    const double miss =
        max_abs_diff(g(x), apply_rho(rho, x)) / (1.0 + x.cwiseAbs().maxCoeff());
    report.residuals.probe = std::max(report.residuals.probe, miss);
    if (miss <= opt.tol) return std::nullopt;
    return NotRigid{detail::pick_witness(f, real_phi_pairs(x), opt.tol),
                    "point not mapped by the same rho as i"};
  };
  auto check_pair = [&](const Point& x, const Point& y) -> std::optional<NotRigid> {
    const Complex expected = phi(x, y);
    const Point fx = f(x);
    const Point fy = f(y);
    const double miss = detail::phi_mismatch(fx, fy, expected);
    report.residuals.probe = std::max(report.residuals.probe, miss);
    if (miss <= opt.tol) return std::nullopt;
    return NotRigid{{x, y, expected, phi(fx, fy)}, "pair with real phi not preserved"};
  };

  if (inputs) {
    for (const auto& [x, y] : sample_pairs)
      if (auto bad = check_pair(x, y)) return finish(std::move(*bad));
    for (const Point& x : *inputs)
      if (auto bad = check_point(x)) return finish(std::move(*bad));
  } else {
    Rng rng(opt.seed);
    for (int v = 0; v < opt.validation; ++v) {
      const Point x = random_point(rng, 1);
      if (auto bad = check_point(x)) return finish(std::move(*bad));
      const double r = rng.uniform(0.05, 3.0) * (rng.coin() ? 1.0 : -1.0);
      if (auto bad = check_pair(x, x + one(r))) return finish(std::move(*bad));
      if (auto bad = check_pair(x, x + one(Complex(0.0, r)))) return finish(std::move(*bad));
    }
  }
  return finish(Rigid{rho, outer});
}

/// classify_dim1 for n = 1, classify_unit otherwise.
inline ClassificationReport classify(const MapSpec& f, const ClassifyOptions& opt = {}) {
  return dimension(f) == 1 ? classify_dim1(f, opt) : classify_unit(f, dimension(f), opt);
}

}  // namespace cbq
