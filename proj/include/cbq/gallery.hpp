#pragma once

// Builtin example and counterexample maps, and the sampling probe for
// distance preservation.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cbq/map_spec.hpp"
#include "cbq/sampling.hpp"

namespace cbq {

/// Seeded semi-affine map with rho in {id, conj}, q = random_complex_orthogonal.
inline SemiAffineMap random_semi_affine(Eigen::Index n, std::uint64_t seed, double scale = 1.0) {
  Rng rng(seed);
  SemiAffineMap m;
  m.rho = rng.coin() ? RhoTag{rho::Conjugation{}} : RhoTag{rho::Identity{}};
  const ComplexMatrix q = random_complex_orthogonal(n, seed ^ 0x9e3779b97f4a7c15ULL, scale);
  m.outer = AffineOrthogonalMap(q, random_point(rng, n, 2.0));
  return m;
}

/// What the classifier should conclude about a gallery map under the unit
/// distance (n >= 2) or real-distance (n = 1) hypothesis.
struct ExpectedVerdict {
  bool rigid = false;
  std::string rho;  // "id", "conj" or "" when not rigid
};

struct GalleryEntry {
  std::string name;
  Eigen::Index min_n = 1;
  Eigen::Index max_n = 0;  // 0: unbounded
  bool invented = false;   // negative control or test fixture
  std::string description;
  std::function<ExpectedVerdict(Eigen::Index, const BuiltinParams&)> expected;

  bool accepts(Eigen::Index n) const { return n >= min_n && (max_n == 0 || n <= max_n); }
};

inline const std::vector<GalleryEntry>& gallery_entries() {
  static const std::vector<GalleryEntry> entries = {
      {"identity", 1, 0, false, "z -> z", [](Eigen::Index, const BuiltinParams&) {
         return ExpectedVerdict{true, "id"};
       }},
      {"conjugation", 1, 0, false, "componentwise complex conjugation",
       [](Eigen::Index, const BuiltinParams&) { return ExpectedVerdict{true, "conj"}; }},
      {"tau_d", 1, 0, false, "componentwise x -> (d / conj(d)) conj(x); params: d",
       [](Eigen::Index, const BuiltinParams& p) {
         // At unit distance only when d^2 is real, where tau_d = +-conj.
         const Complex d2 = p.d.value_or(1.0) * p.d.value_or(1.0);
         if (std::abs(d2.imag()) <= 1e-12 * std::abs(d2)) return ExpectedVerdict{true, "conj"};
         return ExpectedVerdict{false, ""};
       }},
      {"im_shift_1d", 1, 1, false, "z -> z + Im(z); preserves every positive real distance",
       [](Eigen::Index, const BuiltinParams&) { return ExpectedVerdict{false, ""}; }},
      {"im_shift_nd", 2, 0, true, "componentwise z -> z + Im(z); negative control for n >= 2",
       [](Eigen::Index, const BuiltinParams&) { return ExpectedVerdict{false, ""}; }},
      {"random_semi_affine", 1, 0, true,
       "seeded I o (rho, ..., rho), rho in {id, conj}; params: seed, scale",
       [](Eigen::Index n, const BuiltinParams& p) {
         const auto m = random_semi_affine(n, p.seed.value_or(0), p.scale.value_or(1.0));
         return ExpectedVerdict{true, rho_name(m.rho)};
       }},
  };
  return entries;
}

inline const GalleryEntry& gallery_entry(const std::string& name) {
  const auto& entries = gallery_entries();
  const auto it = std::find_if(entries.begin(), entries.end(),
                               [&](const GalleryEntry& e) { return e.name == name; });
  if (it == entries.end()) throw InputError("unknown builtin map: " + name);
  return *it;
}

/// Resolves a gallery name into an evaluable MapSpec.
inline MapSpec builtin(const std::string& name, Eigen::Index n, const BuiltinParams& params = {}) {
  const GalleryEntry& entry = gallery_entry(name);
  if (!entry.accepts(n)) {
    throw DimensionError("builtin " + name + " does not accept n = " + std::to_string(n));
  }

  std::function<Point(const Point&)> fn;
  if (name == "identity") {
    fn = [](const Point& x) { return x; };
  } else if (name == "conjugation") {
    fn = [](const Point& x) { return conjugate_point(x); };
  } else if (name == "tau_d") {
    if (!params.d) throw InputError("builtin tau_d requires parameter d");
    const RhoTag r = scaled_conjugation(*params.d);
    fn = [r](const Point& x) { return apply_rho(r, x); };
  } else if (name == "im_shift_1d" || name == "im_shift_nd") {
    fn = [](const Point& x) {
      Point y = x;
      for (Eigen::Index k = 0; k < y.size(); ++k) y(k) += x(k).imag();
      return y;
    };
  } else if (name == "random_semi_affine") {
    const double scale = params.scale.value_or(1.0);
    if (!(scale >= 0.0)) throw InputError("random_semi_affine: scale must be >= 0");
    fn = [m = random_semi_affine(n, params.seed.value_or(0), scale)](const Point& x) {
      return m(x);
    };
  }

  BuiltinMap map;
  map.name = name;
  map.n = n;
  map.params = params;
  map.evaluate = std::make_shared<const std::function<Point(const Point&)>>(std::move(fn));
  return map;
}

// --- distance preservation probe ------------------------------------------

struct DistanceProbe {
  Complex d;
  int pairs = 0;
  double max_residual = 0.0;  // max |phi(fX, fY) - d^2| / scale
  bool pass = true;
  Point worst_x;
  Point worst_y;
  Complex worst_observed;
};

struct ProbeReport {
  std::vector<DistanceProbe> distances;
  bool pass = true;
};

namespace detail {

inline DistanceProbe probe_one_distance(const MapSpec& f, Eigen::Index n, Complex d,
                                        int pair_count, Rng& rng, double tol) {
  DistanceProbe probe;
  probe.d = d;
  const Complex d2 = d * d;
  double worst = -1.0;
  for (int p = 0; p < pair_count; ++p) {
    const Point x = random_point(rng, n);
    const Point y = x + d * random_unit_direction(rng, n);
    const Point fx = apply_map(f, x);
    const Point fy = apply_map(f, y);
    const Complex observed = phi(fx, fy);
    const double residual = std::abs(observed - d2) / phi_scale(fx, fy);
    ++probe.pairs;
    if (residual > worst) {
      worst = residual;
      probe.worst_x = x;
      probe.worst_y = y;
      probe.worst_observed = observed;
    }
  }
  probe.max_residual = std::max(worst, 0.0);
  probe.pass = probe.max_residual <= tol;
  return probe;
}

}  // namespace detail

/// Samples pair_count random pairs with phi(X, Y) = d^2 at each distance and
/// reports how far phi(fX, fY) strays from d^2.
inline ProbeReport probe_preserves(const MapSpec& f, Eigen::Index n,
                                   const std::vector<Complex>& distances, int pair_count,
                                   std::uint64_t seed, double tol = Tolerances{}.distance) {
  if (distances.empty()) throw InputError("probe_preserves: no distances given");
  Rng rng(seed);
  ProbeReport report;
  for (const Complex d : distances) {
    if (d == Complex(0.0)) throw InputError("probe_preserves: d = 0 is unsupported");
    report.distances.push_back(detail::probe_one_distance(f, n, d, pair_count, rng, tol));
    report.pass = report.pass && report.distances.back().pass;
  }
  return report;
}

inline ProbeReport probe_preserves(const MapSpec& f, Eigen::Index n, Complex d, int pair_count,
                                   std::uint64_t seed, double tol = Tolerances{}.distance) {
  return probe_preserves(f, n, std::vector<Complex>{d}, pair_count, seed, tol);
}

/// count positive distances 0.1, 0.2, ... used by the grid mode of the probe.
inline std::vector<Complex> positive_distance_grid(int count = 50, double step = 0.1) {
  std::vector<Complex> grid;
  for (int m = 1; m <= count; ++m) grid.emplace_back(step * m, 0.0);
  return grid;
}

}  // namespace cbq
