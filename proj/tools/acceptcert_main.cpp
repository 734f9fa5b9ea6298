// acceptcert: run certificates, SCF scans and the Sp(1)^3 criterion.
//
// Exit codes: 0 pass, 1 verdict mismatch, 2 usage or parse error,
// 3 criterion not applicable.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "acceptcert/certificates.hpp"
#include "acceptcert/report.hpp"
#include "acceptcert/scf.hpp"
#include "acceptcert/so3_criterion.hpp"

using namespace acceptcert;

namespace {

constexpr int kPass = 0, kMismatch = 1, kUsage = 2, kNotApplicable = 3;

struct Globals {
  bool json = false;
  std::string out;
  std::size_t max_closure = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// key=value; the value is read as JSON when it parses, else as a string.
Json parse_overrides(const std::vector<std::string>& kvs) {
  Json p = Json::object();
  for (const auto& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("expected key=value, got '" + kv + "'");
    const std::string value = kv.substr(eq + 1);
    p[kv.substr(0, eq)] = Json::accept(value) ? Json::parse(value) : Json(value);
  }
  return p;
}

int emit(const Globals& g, Report& rep, std::chrono::steady_clock::time_point start) {
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const Json j = rep.to_json();
  if (g.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << format_text(rep);
  if (!g.out.empty()) {
    std::ofstream f(g.out);
    if (!f) {
      std::cerr << "error: cannot write " << g.out << "\n";
      return kUsage;
    }
    f << j.dump(2) << "\n";
  }
  return rep.pass() ? kPass : kMismatch;
}

int cmd_list(const Globals& g) {
  Json arr = Json::array();
  for (const auto& c : registry())
    arr.push_back(Json{{"id", c.id}, {"anchor", c.anchor}, {"defaults", c.defaults}, {"grid", c.default_grid}});
  if (g.json) {
    std::cout << arr.dump(2) << "\n";
    return kPass;
  }
  for (const auto& c : arr) {
    std::cout << c["id"].get<std::string>() << "\n    " << c["anchor"].get<std::string>() << "\n    grid:";
    for (const auto& p : c["grid"]) std::cout << " " << p.dump();
    std::cout << "\n";
  }
  return kPass;
}

int cmd_verify(const Globals& g, const std::string& id, const std::vector<std::string>& kvs) {
  const auto start = std::chrono::steady_clock::now();
  const Certificate* cert = find_certificate(id);
  if (!cert) throw UsageError("unknown certificate '" + id + "' (see 'acceptcert list')");
  const Json params = parse_overrides(kvs);
  Report rep;
  rep.invocation = Json{{"command", "verify"}, {"id", id}, {"params", params}};
  rep.results.push_back(run(*cert, params, {g.max_closure}));
  return emit(g, rep, start);
}

int cmd_run_all(const Globals& g, const std::string& filter, const std::string& params_file) {
  const auto start = std::chrono::steady_clock::now();
  const Json grids = params_file.empty() ? Json::object() : read_json_file(params_file);
  if (!grids.is_object()) throw UsageError("parameter file must hold an object keyed by certificate id");
  for (const auto& [id, _] : grids.items())
    if (!find_certificate(id)) throw UsageError("parameter file names unknown certificate '" + id + "'");
  Report rep;
  rep.invocation = Json{{"command", "run-all"}, {"filter", filter}, {"grids", grids}};
  rep.results = run_all(filter, grids, {g.max_closure});
  if (rep.results.empty()) throw UsageError("no certificate matches '" + filter + "'");
  return emit(g, rep, start);
}

int cmd_scan_scf(const Globals& g, const std::string& family, int n, const std::vector<int>& dens) {
  const auto start = std::chrono::steady_clock::now();
  const auto kind = SymPairFamily::parse_kind(family);
  const Certificate& cert = *find_certificate(kind == SymPairFamily::Kind::OOdd ? "scf_o_odd" : "scf_so_odd");
  const Json params{{"n", n}, {"denominators", dens}};
  Report rep;
  rep.invocation = Json{{"command", "scan-scf"}, {"family", family}, {"params", params}};
  rep.results.push_back(run(cert, params, {g.max_closure}));
  return emit(g, rep, start);
}

Json hom_images(const Hom& h) {
  Json arr = Json::array();
  for (std::size_t x : h.source()->generators()) arr.push_back(h.image_rep(x).to_json());
  return arr;
}

int cmd_crit3a1(const Globals& g, const std::string& path) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<AmbientElement> lifts;
  try {
    lifts = lifts_from_json(read_json_file(path));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(path + ": " + e.what());
  }

  Report rep;
  rep.invocation = Json{{"command", "crit3a1"}, {"input", lifts_to_json(lifts)}};
  RunResult r;
  r.id = "crit3a1";
  r.params = Json{{"generators", lifts.size()}};
  r.anchor = "X = Z_Gbar(Gbar)/pi(Z_G(Lambda)) against Y = Hom(Gbar/Gbar', Z) for the input group";
  int code = kPass;
  try {
    const CriterionSetup s = make_setup(lifts, g.max_closure);
    const CriterionReport cr = decide_criterion(s);
    r.checks.push_back({"phi_injective", true, cr.phi_injective});
    r.counts["lambda_order"] = s.lambda->order();
    const Json cj = cr.to_json();
    for (const auto& [k, v] : cj.items())
      if (v.is_number_integer()) r.counts[k] = v;
    r.details["report"] = cj;
    if (cr.phi_surjective) {
      r.details["verdict"] = "phi surjective: the criterion gives no witness";
    } else {
      const HomPair p = build_witness_pair(cr, s);
      DecideOptions d;
      d.cap = g.max_closure;
      r.checks.push_back({"witness_element_conjugate", true, is_element_conjugate(p).element_conjugate});
      r.checks.push_back({"witness_globally_conjugate", false, decide_global(p, d).globally_conjugate});
      r.details["verdict"] = "phi not surjective: witness pair built";
      r.details["witness"] = Json{{"phi", hom_images(p.phi())}, {"phi2", hom_images(p.phi2())}};
    }
  } catch (const CriterionNotApplicable& e) {
    r.error = std::string("criterion not applicable: ") + e.what();
    code = kNotApplicable;
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  rep.results.push_back(std::move(r));
  const int status = emit(g, rep, start);
  if (code == kNotApplicable) {
    std::cerr << rep.results[0].error << "\n";
    return code;
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certificates for conjugacy of homomorphisms into compact Lie groups", "acceptcert"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Print the JSON report instead of text");
  app.add_option("--out", g.out, "Also write the JSON report to this path");
  app.add_option("--max-closure", g.max_closure, "Cap on enumerated group orders (default: env ACCEPTCERT_MAX_CLOSURE)")
      ->check(CLI::PositiveNumber);

  auto* list = app.add_subcommand("list", "List certificates with parameter grids");

  auto* verify = app.add_subcommand("verify", "Run one certificate; parameters as key=value");
  std::string id;
  std::vector<std::string> kvs;
  verify->add_option("id", id, "Certificate id")->required();
  verify->add_option("params", kvs, "Parameter overrides, e.g. m=4 eps=-1");

  auto* all = app.add_subcommand("run-all", "Run every certificate over its grid");
  std::string filter, params_file;
  all->add_option("--filter", filter, "Shell glob on certificate ids");
  all->add_option("--params", params_file, "JSON file of grids keyed by certificate id");

  auto* scan = app.add_subcommand("scan-scf", "Scan g_theta over rational angles for a symmetric pair");
  std::string family;
  int n = 1;
  std::vector<int> dens{4, 6, 8};
  scan->add_option("--family", family, "o-odd or so-odd")->required();
  scan->add_option("--n", n, "Family parameter, at least 1");
  scan->add_option("--denominators", dens, "Angle denominators m (theta = 2 pi k / m)")->delimiter(',');

  auto* crit = app.add_subcommand("crit3a1", "Decide the Sp(1)^3 criterion for generators in a JSON file");
  std::string input;
  crit->add_option("file", input, "JSON file with {\"generators\": [[q1, q2, q3], ...]}")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*list) return cmd_list(g);
    if (*verify) return cmd_verify(g, id, kvs);
    if (*all) return cmd_run_all(g, filter, params_file);
    if (*scan) return cmd_scan_scf(g, family, n, dens);
    if (*crit) return cmd_crit3a1(g, input);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {  // ParamError and family errors
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
