#pragma once

// JSON encodings. A complex scalar is [re, im], a point is an array of
// scalars, a matrix is a row-major array of rows.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cbq/classifier.hpp"
#include "cbq/gallery.hpp"
#include "cbq/map_spec.hpp"
#include "cbq/rigidity.hpp"
#include "cbq/witnesses.hpp"

namespace cbq::json_io {

using json = nlohmann::json;

// Doubles are written as-is (shortest round-trip decimal); -0.0 prints as 0.
inline double clean(double v) { return v == 0.0 ? 0.0 : v; }

inline json to_json(Complex z) { return json::array({clean(z.real()), clean(z.imag())}); }

inline json to_json(const Point& p) {
  json out = json::array();
  for (Eigen::Index k = 0; k < p.size(); ++k) out.push_back(to_json(p(k)));
  return out;
}

inline json to_json(const ComplexMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

inline json to_json(const RhoTag& r) {
  if (const auto* s = std::get_if<rho::ScaledConjugation>(&r)) return json{{"tau_d", to_json(s->d)}};
  return rho_name(r);
}

inline Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("complex scalar must be [re, im], got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Point point_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("point must be a non-empty array of [re, im]");
  Point p(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) p(static_cast<Eigen::Index>(k)) = complex_from_json(j[k]);
  return p;
}

inline RealPoint real_point_from_json(const json& j) {
  const Point p = point_from_json(j);
  if (!is_real(p)) throw InputError("expected a real point");
  return p.real();
}

inline ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw InputError("matrix rows must have equal length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

inline RhoTag rho_from_json(const json& j) {
  if (j == "id") return rho::Identity{};
  if (j == "conj") return rho::Conjugation{};
  if (j.is_object() && j.contains("tau_d")) return scaled_conjugation(complex_from_json(j["tau_d"]));
  throw InputError("rho must be \"id\", \"conj\" or {\"tau_d\": [re, im]}, got " + j.dump());
}

// --- maps -------------------------------------------------------------------

inline json to_json(const BuiltinParams& p) {
  json out = json::object();
  if (p.d) out["d"] = to_json(*p.d);
  if (p.seed) out["seed"] = *p.seed;
  if (p.scale) out["scale"] = *p.scale;
  return out;
}

inline json to_json(const MapSpec& spec) {
  return std::visit(
      [](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, SemiAffineMap>) {
          return {{"kind", "semi_affine"}, {"rho", to_json(m.rho)}, {"q", to_json(m.outer.q())},
                  {"b", to_json(m.outer.b())}};
        } else if constexpr (std::is_same_v<T, BuiltinMap>) {
          return {{"kind", "builtin"}, {"name", m.name}, {"n", m.n}, {"params", to_json(m.params)}};
        } else {
          json samples = json::array();
          for (const auto& [x, y] : m.samples) samples.push_back({to_json(x), to_json(y)});
          return {{"kind", "tabulated"}, {"n", m.n}, {"samples", samples}};
        }
      },
      spec);
}

/// fallback_n fills in "n" when the document omits it.
inline MapSpec map_spec_from_json(const json& j, std::optional<Eigen::Index> fallback_n = {},
                                  double ortho_tol = Tolerances{}.ortho) {
  if (!j.is_object() || !j.contains("kind")) throw InputError("map spec must be an object with \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  auto read_n = [&]() -> Eigen::Index {
    if (j.contains("n")) return j["n"].get<Eigen::Index>();
    if (fallback_n) return *fallback_n;
    throw InputError("map spec needs \"n\"");
  };

  if (kind == "semi_affine") {
    SemiAffineMap m;
    m.rho = j.contains("rho") ? rho_from_json(j["rho"]) : RhoTag{rho::Identity{}};
    const Point b = point_from_json(j.at("b"));
    const ComplexMatrix q = j.contains("q") ? matrix_from_json(j["q"])
                                            : ComplexMatrix(ComplexMatrix::Identity(b.size(), b.size()));
    m.outer = AffineOrthogonalMap(q, b, ortho_tol);
    if (j.contains("n") && read_n() != m.dimension()) throw DimensionError("semi_affine: n does not match b");
    return m;
  }
  if (kind == "builtin") {
    BuiltinParams params;
    if (j.contains("params")) {
      const json& p = j["params"];
      if (p.contains("d")) params.d = complex_from_json(p["d"]);
      if (p.contains("seed")) params.seed = p["seed"].get<std::uint64_t>();
      if (p.contains("scale")) params.scale = p["scale"].get<double>();
    }
    return builtin(j.at("name").get<std::string>(), read_n(), params);
  }
  if (kind == "tabulated") {
    TabulatedMap t;
    for (const json& s : j.at("samples")) {
      if (!s.is_array() || s.size() != 2) throw InputError("tabulated sample must be [input, output]");
      t.samples.emplace_back(point_from_json(s[0]), point_from_json(s[1]));
    }
    if (t.samples.empty()) throw InputError("tabulated map has no samples");
    t.n = j.contains("n") ? j["n"].get<Eigen::Index>() : t.samples.front().first.size();
    for (const auto& [x, y] : t.samples)
      if (x.size() != t.n || y.size() != t.n) throw DimensionError("tabulated sample has wrong dimension");
    return t;
  }
  throw InputError("unknown map kind: " + kind);
}

// --- chains -----------------------------------------------------------------

inline json to_json(const WitnessChain& chain) {
  json points = json::array();
  for (const Point& p : chain.points) points.push_back(to_json(p));
  json certs = json::array();
  for (const EdgeCertificate& c : chain.certificates)
    certs.push_back({{"phi", to_json(c.phi)}, {"psi", clean(c.psi)}});
  return {{"kind", chain_kind_name(chain.kind)}, {"points", points}, {"certificates", certs}};
}

inline WitnessChain chain_from_json(const json& j) {
  if (!j.is_object()) throw InputError("chain must be a JSON object");
  WitnessChain chain;
  chain.kind = chain_kind_from_name(j.at("kind").get<std::string>());
  for (const json& p : j.at("points")) chain.points.push_back(point_from_json(p));
  if (j.contains("certificates")) {
    for (const json& c : j["certificates"])
      chain.certificates.push_back({complex_from_json(c.at("phi")), c.at("psi").get<double>()});
  }
  return chain;
}

inline json to_json(const ChainReport& r) {
  json edges = json::array();
  for (const EdgeCheck& e : r.edges) {
    json item = {{"edge", e.index}, {"phi", to_json(e.phi)}, {"psi", clean(e.psi)},
                 {"residual", clean(e.phi_residual)}, {"ok", e.ok}};
    if (!e.message.empty()) item["message"] = e.message;
    edges.push_back(std::move(item));
  }
  return {{"kind", "chain_verification"}, {"chain_kind", chain_kind_name(r.kind)}, {"pass", r.pass},
          {"edges", edges}, {"failures", r.failures}};
}

// --- solver and classifier --------------------------------------------------

inline json to_json(const CandidatePair& c) {
  return {{"kind", "theorem1"},
          {"pivot", c.pivot},
          {"t0", c.t0},
          {"t_values", {c.t_values[0], c.t_values[1]}},
          {"pivot_roots", {to_json(c.pivot_roots[0]), to_json(c.pivot_roots[1])}},
          {"candidates", {to_json(c.original), to_json(c.conjugated)}}};
}

inline json to_json(const ClassificationReport& r) {
  json out = {{"kind", "classification"},
              {"verdict", r.rigid() ? "rigid" : "not_rigid"},
              {"residuals", {{"ortho", clean(r.residuals.ortho)}, {"fit", clean(r.residuals.fit)},
                             {"probe", clean(r.residuals.probe)}}},
              {"probes_used", r.probes_used}};
  if (r.rigid()) {
    const Rigid& rig = r.as_rigid();
    out["rho"] = to_json(rig.rho);
    out["q"] = to_json(rig.outer.q());
    out["b"] = to_json(rig.outer.b());
  } else {
    const NotRigid& nr = r.as_not_rigid();
    out["reason"] = nr.reason;
    out["witness"] = {{"x", to_json(nr.witness.x)}, {"y", to_json(nr.witness.y)},
                      {"expected_phi", to_json(nr.witness.expected_phi)},
                      {"observed_phi", to_json(nr.witness.observed_phi)}};
  }
  return out;
}

inline json to_json(const ProbeReport& r) {
  json items = json::array();
  for (const DistanceProbe& p : r.distances) {
    items.push_back({{"d", to_json(p.d)}, {"pairs", p.pairs}, {"max_residual", clean(p.max_residual)},
                     {"pass", p.pass}, {"worst_x", to_json(p.worst_x)}, {"worst_y", to_json(p.worst_y)},
                     {"worst_observed_phi", to_json(p.worst_observed)}});
  }
  return {{"kind", "probe"}, {"pass", r.pass}, {"distances", items}};
}

inline json gallery_json() {
  json items = json::array();
  for (const GalleryEntry& e : gallery_entries()) {
    json item = {{"name", e.name}, {"min_n", e.min_n}, {"invented", e.invented},
                 {"description", e.description}};
    item["max_n"] = e.max_n == 0 ? json("any") : json(e.max_n);
    items.push_back(std::move(item));
  }
  return {{"kind", "gallery"}, {"entries", items}};
}

}  // namespace cbq::json_io
