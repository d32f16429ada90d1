// cbq: command-line front end for the cbq library.
//
// Every command writes one JSON document to stdout.
// Exit codes: 0 success / rigid / verified, 1 not rigid / verification failed,
// 2 input error (the document is then {"error": message}).

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cbq/cbq.hpp"
#include "cbq/json_io.hpp"

namespace {

using cbq::json_io::json;

constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kInputError = 2;

struct Options {
  std::string map_source;
  std::string chain_source = "-";
  std::string point;
  std::string to;
  std::string d;
  std::string kind = "lemma4";
  std::optional<long> n;
  double tol = 1e-9;
  double ortho_tol = 1e-8;
  double scale = 1.0;
  std::optional<std::uint64_t> seed;
  int validation = 256;
};

std::string read_source(const std::string& source) {
  if (source.empty()) throw cbq::InputError("missing input: pass a file or - for stdin");
  if (source == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(source);
  if (!in) throw cbq::InputError("cannot open " + source);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw cbq::InputError(std::string("malformed JSON in ") + what + ": " + e.what());
  }
}

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("CBQ_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw cbq::InputError(std::string("CBQ_SEED is not an integer: ") + env);
    }
  }
  return 0;
}

cbq::ClassifyOptions classify_options(const Options& o) {
  cbq::ClassifyOptions c;
  c.tol = o.tol;
  c.ortho_tol = o.ortho_tol;
  c.validation = o.validation;
  c.seed = resolve_seed(o);
  return c;
}

cbq::MapSpec load_map(const Options& o) {
  const json doc = parse_json(read_source(o.map_source), "--map");
  std::optional<Eigen::Index> n;
  if (o.n) n = *o.n;
  cbq::MapSpec spec = cbq::json_io::map_spec_from_json(doc, n, o.ortho_tol);
  if (o.n && cbq::dimension(spec) != *o.n) {
    throw cbq::DimensionError("--n " + std::to_string(*o.n) + " does not match the map dimension " +
                              std::to_string(cbq::dimension(spec)));
  }
  return spec;
}

cbq::Point require_point(const std::string& text, const char* flag) {
  if (text.empty()) throw cbq::InputError(std::string(flag) + " is required");
  return cbq::json_io::point_from_json(parse_json(text, flag));
}

int emit(const json& doc, int code) {
  std::cout << doc.dump(2) << '\n';
  return code;
}

int cmd_classify(const Options& o) {
  const cbq::MapSpec f = load_map(o);
  const auto report = cbq::classify(f, classify_options(o));
  return emit(cbq::json_io::to_json(report), report.rigid() ? kOk : kRejected);
}

int cmd_classify_d(const Options& o) {
  const cbq::MapSpec f = load_map(o);
  if (o.d.empty()) throw cbq::InputError("--d is required");
  const cbq::Complex d = cbq::json_io::complex_from_json(parse_json(o.d, "--d"));
  const auto report = cbq::classify_distance_d(f, cbq::dimension(f), d, classify_options(o));
  json doc = cbq::json_io::to_json(report);
  doc["d"] = cbq::json_io::to_json(d);
  return emit(doc, report.rigid() ? kOk : kRejected);
}

int cmd_witness_chain(const Options& o) {
  const cbq::ChainKind kind = cbq::chain_kind_from_name(o.kind);
  cbq::WitnessChain chain;
  if (kind == cbq::ChainKind::RealUnitChain) {
    if (o.point.empty()) throw cbq::InputError("--point is required");
    const json p = parse_json(o.point, "--point");
    // Either --point S --to T, or --point [S, T].
    if (o.to.empty()) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_array() || p[0].empty() || !p[0][0].is_array())
        throw cbq::InputError("lemma3 needs --to T or --point [S, T]");
      chain = cbq::unit_chain(cbq::json_io::real_point_from_json(p[0]),
                              cbq::json_io::real_point_from_json(p[1]));
    } else {
      chain = cbq::unit_chain(cbq::json_io::real_point_from_json(p),
                              cbq::json_io::real_point_from_json(parse_json(o.to, "--to")));
    }
  } else if (kind == cbq::ChainKind::Lemma4Chain) {
    chain = cbq::lemma4_chain(require_point(o.point, "--point"));
  } else {
    chain = cbq::lemma5_path(require_point(o.point, "--point"));
  }
  return emit(cbq::json_io::to_json(chain), kOk);
}

int cmd_verify_chain(const Options& o) {
  const json doc = parse_json(read_source(o.chain_source), "--chain");
  const auto report = cbq::verify_chain(cbq::json_io::chain_from_json(doc), o.tol);
  return emit(cbq::json_io::to_json(report), report.pass ? kOk : kRejected);
}

int cmd_theorem1(const Options& o) {
  const cbq::Point x = require_point(o.point, "--point");
  const auto pair = cbq::theorem1_candidates(x);
  json doc = cbq::json_io::to_json(pair);
  const std::vector<double> ts{pair.t_values[0], pair.t_values[1]};
  doc["forcing_residuals"] = {cbq::json_io::clean(cbq::forcing_residual(x, pair.original, ts)),
                              cbq::json_io::clean(cbq::forcing_residual(x, pair.conjugated, ts))};
  return emit(doc, kOk);
}

int cmd_probe(const Options& o) {
  const cbq::MapSpec f = load_map(o);
  const std::vector<cbq::Complex> distances =
      o.d.empty() ? cbq::positive_distance_grid()
                  : std::vector<cbq::Complex>{cbq::json_io::complex_from_json(parse_json(o.d, "--d"))};
  const auto report =
      cbq::probe_preserves(f, cbq::dimension(f), distances, o.validation, resolve_seed(o), o.tol);
  return emit(cbq::json_io::to_json(report), report.pass ? kOk : kRejected);
}

int cmd_gen_orthogonal(const Options& o) {
  if (!o.n) throw cbq::InputError("--n is required");
  const std::uint64_t seed = resolve_seed(o);
  const cbq::ComplexMatrix q = cbq::random_complex_orthogonal(*o.n, seed, o.scale);
  const auto check = cbq::is_complex_orthogonal(q, o.ortho_tol);
  return emit({{"kind", "orthogonal"},
               {"n", *o.n},
               {"seed", seed},
               {"scale", o.scale},
               {"q", cbq::json_io::to_json(q)},
               {"residual", cbq::json_io::clean(check.residual)},
               {"orthogonal", check.orthogonal}},
              kOk);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-affine classification of distance-preserving maps of C^n"};
  app.require_subcommand(1);
  Options o;

  auto add_tol = [&](CLI::App* c) {
    c->add_option("--tol", o.tol, "distance tolerance")->capture_default_str();
    c->add_option("--ortho-tol", o.ortho_tol, "orthogonality tolerance")->capture_default_str();
  };
  auto add_seed = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "sampling seed (fallback: $CBQ_SEED, then 0)");
    c->add_option("--validation", o.validation, "number of sampled points / pairs")->capture_default_str();
  };
  auto add_map = [&](CLI::App* c) {
    c->add_option("--map", o.map_source, "map spec JSON file, or - for stdin")->required();
    c->add_option("--n", o.n, "dimension (checked against the map)");
  };

  auto* classify = app.add_subcommand("classify", "classify a unit-distance preserving map");
  add_map(classify);
  add_tol(classify);
  add_seed(classify);

  auto* classify_d = app.add_subcommand("classify-d", "classify a map preserving distance d");
  add_map(classify_d);
  classify_d->add_option("--d", o.d, "distance as [re, im]")->required();
  add_tol(classify_d);
  add_seed(classify_d);

  auto* witness = app.add_subcommand("witness-chain", "build a witness configuration");
  witness->add_option("--kind", o.kind, "lemma3 | lemma4 | lemma5")->capture_default_str();
  witness->add_option("--point", o.point, "point JSON (lemma3: S, or [S, T])");
  witness->add_option("--to", o.to, "lemma3 end point T");

  auto* verify = app.add_subcommand("verify-chain", "re-check a chain's certificates");
  verify->add_option("--chain", o.chain_source, "chain JSON file, or - for stdin")->capture_default_str();
  verify->add_option("--tol", o.tol, "phi tolerance")->capture_default_str();

  auto* theorem1 = app.add_subcommand("theorem1", "solve for the two forced images of a non-real point");
  theorem1->add_option("--point", o.point, "point JSON")->required();

  auto* probe = app.add_subcommand("probe", "sample distance preservation (grid of 50 when --d is absent)");
  add_map(probe);
  probe->add_option("--d", o.d, "distance as [re, im]");
  add_tol(probe);
  add_seed(probe);

  auto* gen = app.add_subcommand("gen-orthogonal", "seeded random complex orthogonal matrix");
  gen->add_option("--n", o.n, "dimension")->required();
  gen->add_option("--scale", o.scale, "bound on generator entries")->capture_default_str();
  gen->add_option("--ortho-tol", o.ortho_tol, "orthogonality tolerance")->capture_default_str();
  gen->add_option("--seed", o.seed, "seed (fallback: $CBQ_SEED, then 0)");

  auto* gallery = app.add_subcommand("gallery-list", "list builtin maps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit({{"error", e.what()}}, kInputError);
  }

  try {
    if (*classify) return cmd_classify(o);
    if (*classify_d) return cmd_classify_d(o);
    if (*witness) return cmd_witness_chain(o);
    if (*verify) return cmd_verify_chain(o);
    if (*theorem1) return cmd_theorem1(o);
    if (*probe) return cmd_probe(o);
    if (*gen) return cmd_gen_orthogonal(o);
    if (*gallery) return emit(cbq::json_io::gallery_json(), kOk);
  } catch (const cbq::InputError& e) {
    return emit({{"error", e.what()}}, kInputError);
  } catch (const json::exception& e) {
    return emit({{"error", e.what()}}, kInputError);
  } catch (const std::exception& e) {
    return emit({{"error", e.what()}}, kInputError);
  }
  return kInputError;
}
