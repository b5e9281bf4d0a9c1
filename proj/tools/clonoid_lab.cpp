// clonoid-lab: instance specs in, deterministic JSON reports out. All the
// algebra lives in the library; this file only parses arguments, dispatches,
// and serializes reports.
#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "clonoid/clonoid.hpp"
#include "clonoid/verify.hpp"

using nlohmann::json;
using namespace clonoid;

namespace {

// "zmod4" -> regular Z_4; "zmod2^2" -> product of two copies; "triangular2"
// -> regular module of the upper triangular 2x2 ring; a leading '{' or '@'
// means inline JSON / a spec file.
json parse_spec(const std::string& s) {
  if (!s.empty() && s[0] == '{') return json::parse(s);
  if (!s.empty() && s[0] == '@') {
    std::ifstream in(s.substr(1));
    if (!in) fail("MalformedSpec", "cannot open spec file " + s.substr(1));
    return json::parse(in);
  }
  auto caret = s.find('^');
  if (caret != std::string::npos) {
    json factor = parse_spec(s.substr(0, caret));
    int copies = std::stoi(s.substr(caret + 1));
    json factors = json::array();
    for (int i = 0; i < copies; ++i) factors.push_back(factor);
    return {{"kind", "product"}, {"factors", factors}};
  }
  if (s.rfind("zmod", 0) == 0)
    return {{"kind", "regular"}, {"ring", {{"kind", "zmod"}, {"m", std::stoi(s.substr(4))}}}};
  if (s.rfind("triangular", 0) == 0)
    return {{"kind", "regular"},
            {"ring", {{"kind", "triangular"}, {"p", std::stoi(s.substr(10))}}}};
  fail("MalformedSpec", "unrecognized spec shorthand: " + s);
}

json parse_ring_spec(const std::string& s) {
  json spec = parse_spec(s);
  if (spec.contains("kind") && spec["kind"] == "regular") return spec["ring"];
  return spec;
}

struct Output {
  std::string report_path;
  int64_t seed = 0;

  int emit(const VerificationReport& rep) {
    VerificationReport r = rep;
    r.seed = seed;
    write(r.to_json());
    return r.status == "refuted" ? 1 : 0;
  }
  int emit_info(const std::string& command, const json& instance, const json& result) {
    write({{"command", command}, {"instance", instance}, {"status", "ok"},
           {"witness", result}, {"elapsed_ms", 0}, {"seed", seed}});
    return 0;
  }
  void write(const json& j) {
    if (report_path.empty()) {
      std::cout << j.dump(2) << "\n";
    } else {
      std::ofstream out(report_path);
      out << j.dump(2) << "\n";
    }
  }
};

json ring_info(const RingPtr& ring) {
  RingIdeal j = jacobson_radical(ring);
  json blocks = json::array();
  if (ring_is_commutative(*ring))
    for (const LocalBlock& b : local_decomposition(ring).blocks)
      blocks.push_back({{"idempotent", b.idempotent}, {"size", b.elements.size()}});
  return {{"label", ring->label},
          {"size", ring->size},
          {"units", ring_units(*ring).size()},
          {"commutative", ring_is_commutative(*ring)},
          {"radical", j.elements},
          {"nilpotence_degree", nilpotence_degree(*ring, j)},
          {"local_blocks", blocks}};
}

json module_lattice(const ModulePtr& m) {
  json subs = json::array();
  for (const Submodule& s : submodules(m)) subs.push_back(s.elements);
  DistributivityCheck d = is_distributive(m);
  return {{"label", m->label},
          {"size", m->size},
          {"invariants", m->basis.orders},
          {"submodules", subs},
          {"distributive", d.distributive},
          {"min_generators", min_generators(m)},
          {"radical", radical_submodule(m).elements}};
}

json coeffs_json(const std::vector<std::pair<Matrix, int64_t>>& coeffs) {
  json out = json::array();
  for (const auto& [m, c] : coeffs)
    out.push_back({{"rows", m.rows}, {"cols", m.cols}, {"entries", m.e}, {"coeff", c}});
  return out;
}

int run_interpolation(Output& out, const std::string& module_spec, int arity, int rank,
                      int64_t exponent, const std::string& method) {
  auto start = std::chrono::steady_clock::now();
  ModulePtr a = module_make(parse_spec(module_spec));
  VerificationReport rep;
  rep.command = "verify-interpolation";
  rep.instance = {{"module", module_spec}, {"arity", arity}, {"rank", rank},
                  {"exponent", exponent}, {"method", method}};
  json witness = json::object();
  std::string status = "verified";
  if (method == "linear" || method == "both") {
    CoeffSolution sol = solve_coeffs_linear(a, arity, rank, exponent);
    if (!sol.feasible)
      status = "infeasible";
    else if (!sol.verified)
      status = "refuted";
    witness["linear"] = {{"feasible", sol.feasible}, {"verified", sol.verified},
                         {"coeffs", coeffs_json(sol.coeffs)}};
  }
  if ((method == "constructive" || method == "both") && status == "verified") {
    CoeffSolution sol = coeff_solution_constructive(a, arity, exponent);
    if (!sol.verified) status = "refuted";
    witness["constructive"] = {{"verified", sol.verified}, {"rank_bound", sol.rank_bound},
                               {"terms", sol.coeffs.size()}};
  }
  rep.status = status;
  rep.witness = witness;
  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return out.emit(rep);
}

int run_census(Output& out, const std::string& dom_spec, const std::string& cod_spec, int n) {
  auto start = std::chrono::steady_clock::now();
  ModulePtr a = module_make(parse_spec(dom_spec));
  ModulePtr b = module_make(parse_spec(cod_spec));
  ClonoidCensus census = enumerate_clonoids(a, b, n);
  json sizes = json::array();
  for (const Clonoid& c : census.clonoids) {
    json by_arity = json::array();
    for (int k = 1; k <= c.max_arity; ++k)
      by_arity.push_back(c.empty ? 0 : static_cast<int64_t>(c.part(k).size()));
    sizes.push_back(by_arity);
  }
  VerificationReport rep;
  rep.command = "enumerate-clonoids";
  rep.instance = {{"domain", dom_spec}, {"codomain", cod_spec}, {"n", n}};
  rep.status = census.bound_relative ? "bound-relative" : "verified";
  rep.witness = {{"count", census.clonoids.size()}, {"layer_sizes", sizes}};
  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return out.emit(rep);
}

int dispatch(const std::vector<std::string>& args);

int run_batch(Output& out, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("MalformedSpec", "cannot open manifest " + path);
  json manifest = json::parse(in);
  int worst = 0;
  for (const json& entry : manifest) {
    std::vector<std::string> args;
    for (const json& a : entry) args.push_back(a.get<std::string>());
    worst = std::max(worst, dispatch(args));
  }
  (void)out;
  return worst;
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"exact computation with clonoids between finite modules"};
  app.require_subcommand(1);
  Output out;
  int parallelism = 1;

  std::string ring_spec, module_spec, dom_spec, cod_spec, method = "linear", matrix_json;
  int arity = 1, rank = 1, max_k = 2, n = 1, m = 2, mat_rows = 1, mat_cols = 1;
  int64_t exponent = 3;

  auto* c_ring = app.add_subcommand("ring-info", "structure report for a finite ring");
  c_ring->add_option("--ring", ring_spec)->required();

  auto* c_lat = app.add_subcommand("module-lattice", "submodule lattice of a finite module");
  c_lat->add_option("--module", module_spec)->required();

  auto* c_rank = app.add_subcommand("rank", "inner rank of a matrix over a ring");
  c_rank->add_option("--ring", ring_spec)->required();
  c_rank->add_option("--matrix", matrix_json, "row-major JSON list of element indices")->required();
  c_rank->add_option("--rows", mat_rows)->required();
  c_rank->add_option("--cols", mat_cols)->required();

  auto* c_interp = app.add_subcommand("verify-interpolation", "rank-bounded interpolation identity");
  c_interp->add_option("--module", module_spec)->required();
  c_interp->add_option("--arity", arity)->required();
  c_interp->add_option("--rank", rank);
  c_interp->add_option("--exponent", exponent)->required();
  c_interp->add_option("--method", method)->check(CLI::IsMember({"linear", "constructive", "both"}));

  auto* c_ex = app.add_subcommand("verify-example", "the explicit binary averaging identity");
  c_ex->add_option("--exponent", exponent)->required();

  auto* c_mal = app.add_subcommand("verify-malcev", "interpolation on the affine reduct of Z_m");
  c_mal->add_option("--m", m)->required();
  c_mal->add_option("--exponent", exponent)->required();
  c_mal->add_option("--arity", arity)->required();

  auto* c_chain = app.add_subcommand("chain", "strictly ascending chain over a common prime");
  c_chain->add_option("--domain", dom_spec)->required();
  c_chain->add_option("--codomain", cod_spec)->required();
  c_chain->add_option("--max-k", max_k)->required();

  auto* c_sep = app.add_subcommand("separate", "arity-separation constructions");
  std::string flavor;
  c_sep->add_option("flavor", flavor)->check(CLI::IsMember({"noncyclic", "jacobson"}))->required();
  c_sep->add_option("--domain", dom_spec);
  c_sep->add_option("--ring", ring_spec);
  c_sep->add_option("--codomain", cod_spec)->required();
  c_sep->add_option("--n", n);

  auto* c_census = app.add_subcommand("enumerate-clonoids", "census of clonoids by n-ary layer");
  c_census->add_option("--domain", dom_spec)->required();
  c_census->add_option("--codomain", cod_spec)->required();
  c_census->add_option("--n", n)->required();

  auto* c_spot = app.add_subcommand("spotcheck-commutative", "unary generation over a commutative ring");
  c_spot->add_option("--ring", ring_spec)->required();
  c_spot->add_option("--codomain", cod_spec)->required();

  auto* c_batch = app.add_subcommand("batch", "run every invocation listed in a manifest");
  std::string manifest_path;
  c_batch->add_option("--manifest", manifest_path)->required();

  for (CLI::App* sub : app.get_subcommands(std::function<bool(CLI::App*)>{})) {
    sub->add_option("--report", out.report_path, "write the JSON report here instead of stdout");
    sub->add_option("--seed", out.seed, "seed recorded in the report");
    sub->add_option("--parallelism", parallelism, "instances run concurrently in batch mode");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"status", "error"}, {"code", "Usage"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  try {
    if (c_ring->parsed())
      return out.emit_info("ring-info", {{"ring", ring_spec}},
                           ring_info(ring_make(parse_ring_spec(ring_spec))));
    if (c_lat->parsed())
      return out.emit_info("module-lattice", {{"module", module_spec}},
                           module_lattice(module_make(parse_spec(module_spec))));
    if (c_rank->parsed()) {
      RingPtr ring = ring_make(parse_ring_spec(ring_spec));
      Matrix mat(mat_rows, mat_cols);
      mat.e = json::parse(matrix_json).get<std::vector<int>>();
      if (static_cast<int>(mat.e.size()) != mat_rows * mat_cols)
        fail("MalformedSpec", "matrix entry count does not match the shape");
      return out.emit_info("rank", {{"ring", ring_spec}, {"rows", mat_rows}, {"cols", mat_cols}},
                           {{"inner_rank", inner_rank(ring, mat)}});
    }
    if (c_interp->parsed())
      return run_interpolation(out, module_spec, arity, rank, exponent, method);
    if (c_ex->parsed()) return out.emit(verify_example_binary(exponent));
    if (c_mal->parsed()) return out.emit(verify_affine_malcev(m, exponent, arity));
    if (c_chain->parsed())
      return out.emit(ascending_chain(module_make(parse_spec(dom_spec)),
                                      module_make(parse_spec(cod_spec)), max_k));
    if (c_sep->parsed()) {
      ModulePtr b = module_make(parse_spec(cod_spec));
      if (flavor == "noncyclic") {
        if (dom_spec.empty()) fail("MalformedSpec", "noncyclic separation needs --domain");
        return out.emit(separation_noncyclic(module_make(parse_spec(dom_spec)), b, n));
      }
      if (ring_spec.empty()) fail("MalformedSpec", "jacobson separation needs --ring");
      return out.emit(separation_jacobson(ring_make(parse_ring_spec(ring_spec)), b));
    }
    if (c_census->parsed()) return run_census(out, dom_spec, cod_spec, n);
    if (c_spot->parsed())
      return out.emit(commutative_spotcheck(ring_make(parse_ring_spec(ring_spec)),
                                            module_make(parse_spec(cod_spec))));
    if (c_batch->parsed()) return run_batch(out, manifest_path);
  } catch (const Error& e) {
    out.write({{"status", "error"}, {"code", e.code()}, {"message", e.what()}});
    return 2;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  return dispatch(std::vector<std::string>(argv + 1, argv + argc));
}
