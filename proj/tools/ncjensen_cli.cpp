// Batch front door: JSON in, JSON report out, seeded determinism.
// Exit codes: 0 = property holds / no violation, 1 = violation found
// (witness in the report), 2 = input or usage error.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ncjensen/io.hpp"

using namespace ncj;
using ncj::io::json;

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInputError = 2;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NcError("cannot open input file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw NcError("cannot parse " + path + ": " + e.what());
  }
  return j;
}

void emit(const json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw NcError("cannot open output file: " + out_path);
  out << report.dump(2) << "\n";
}

struct Options {
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double tol = kPsdTol;
  std::int64_t trials = 200;
  std::vector<Eigen::Index> levels{1, 2};
  int max_len = 3;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--out", opt.out, "report output path (default: stdout)");
  cmd->add_option("--tol", opt.tol, "tolerance override");
  cmd->add_option("--max-len", opt.max_len, "max word/pattern length");
}

void add_seeded(CLI::App* cmd, Options& opt) {
  cmd->add_option("--seed", opt.seed, "64-bit seed (required)")
      ->required()
      ->each([&opt](const std::string&) { opt.seed_set = true; });
  cmd->add_option("--trials", opt.trials, "number of randomized trials");
  cmd->add_option("--levels", opt.levels, "matrix levels to sample");
}

json config_json(const std::string& command, const Options& opt) {
  json c{{"command", command}, {"tol", opt.tol}, {"max_len", opt.max_len}};
  if (opt.seed_set) {
    c["seed"] = opt.seed;
    c["trials"] = opt.trials;
    c["levels"] = opt.levels;
  }
  if (!opt.out.empty()) c["out"] = opt.out;
  return c;
}

std::vector<AlgebraSpec> algebras_from_file(const std::string& path) {
  std::vector<AlgebraSpec> algs;
  for (const auto& aj : load_json(path)) algs.push_back(io::algebra_from_json(aj));
  validate_algebras(algs);
  return algs;
}

// --- subcommand drivers; each returns the exit code ---

int run_jensen(const std::string& f_path, const std::string& mu_path,
               const std::string& compressed_path, const Options& opt) {
  NCPoly f = io::ncpoly_from_json(load_json(f_path));
  JensenReport rep;
  json mu_json;
  if (!mu_path.empty()) {
    CFreeFunctional F = io::cfree_from_json(load_json(mu_path));
    rep = jensen_verify(f, F, opt.tol);
    mu_json = io::cfree_to_json(F);
  } else {
    CompressedPointEval mu = io::compressed_from_json(load_json(compressed_path));
    rep = jensen_verify(f, mu, opt.tol);
    mu_json = io::compressed_to_json(mu);
  }
  json report{{"config", config_json("jensen", opt)},
              {"function", io::ncpoly_to_json(f)},
              {"functional", mu_json},
              {"jensen", io::jensen_report_to_json(rep)}};
  emit(report, opt.out);
  return rep.holds ? kExitHolds : kExitViolation;
}

int run_convexity(const std::string& f_path, const std::string& algebras_path,
                  const std::string& mode_name, const Options& opt) {
  NCPoly f = io::ncpoly_from_json(load_json(f_path));
  auto algebras = algebras_from_file(algebras_path);
  const ConvexityMode mode =
      mode_name == "joint" ? ConvexityMode::Joint : ConvexityMode::Separate;
  auto witness =
      check_separate_convexity(f, algebras, mode, opt.levels, opt.trials, opt.seed);
  json report{{"config", config_json("convexity", opt)},
              {"mode", mode_name},
              {"function", io::ncpoly_to_json(f)},
              {"verdict", witness ? "witness" : "no_violation"}};
  if (witness) report["witness"] = io::witness_to_json(*witness);
  emit(report, opt.out);
  return witness ? kExitViolation : kExitHolds;
}

int run_fubini(const std::string& rep_path, const std::string& subspace_path,
               const Options& opt) {
  FiniteRep rep = io::finiterep_from_json(load_json(rep_path));
  Subspace H = io::subspace_from_json(load_json(subspace_path));
  FubiniSearchResult res = find_fubini_chain(rep, H, opt.max_len, opt.tol);
  json report{{"config", config_json("fubini", opt)},
              {"found", res.found}};
  if (res.found) {
    report["sequence"] = res.sequence;
    report["report"] = io::fubini_report_to_json(res.report);
    json spaces = json::array();
    for (const auto& s : res.chain.spaces) spaces.push_back(io::subspace_to_json(s));
    report["chain"] = spaces;
  }
  emit(report, opt.out);
  return res.found ? kExitHolds : kExitViolation;
}

int run_freeproduct(const std::string& rep_path, const std::string& subspace_path,
                    const std::string& mu_path, const Options& opt) {
  FreeProductVerdict v;
  json source;
  if (!mu_path.empty()) {
    CFreeFunctional F = io::cfree_from_json(load_json(mu_path));
    GnsSpace g = build_gns(F, opt.max_len);
    v = is_free_product_map(g, opt.max_len, opt.tol);
    source = io::cfree_to_json(F);
  } else {
    FiniteRep rep = io::finiterep_from_json(load_json(rep_path));
    Subspace H = io::subspace_from_json(load_json(subspace_path));
    v = is_free_product_map(rep, H, opt.max_len, opt.tol);
    source = json{{"rep", io::finiterep_to_json(rep)}, {"subspace", io::subspace_to_json(H)}};
  }
  json report{{"config", config_json("freeproduct", opt)},
              {"input", source},
              {"is_free_product", v.is_free_product},
              {"patterns", io::pattern_report_to_json(v.report)}};
  emit(report, opt.out);
  return v.is_free_product ? kExitHolds : kExitViolation;
}

int run_gns(const std::string& mu_path, const Options& opt) {
  CFreeFunctional F = io::cfree_from_json(load_json(mu_path));
  json report{{"config", config_json("gns", opt)}};
  try {
    GnsSpace g = build_gns(F, opt.max_len);
    report["basis_size"] = g.basis_size();
    report["gram_min_eig"] = min_eigenvalue(g.gram);
    report["certificate"] = "psd";
    emit(report, opt.out);
    return kExitHolds;
  } catch (const NcError& e) {
    report["certificate"] = "failed";
    report["error"] = e.what();
    emit(report, opt.out);
    return kExitViolation;
  }
}

int run_semicircular(const std::vector<double>& radii, Eigen::Index k, const Options& opt) {
  SemicircularExperiment e =
      semicircular_inequality_experiment(k, radii, opt.trials, opt.seed, 4, opt.tol);
  json report{{"config", config_json("semicircular", opt)},
              {"experiment", io::semicircular_to_json(e)}};
  emit(report, opt.out);
  return e.all_hold ? kExitHolds : kExitViolation;
}

int run_fixtures(const Options& opt) {
  json report{{"config", config_json("fixtures", opt)}};
  bool as_expected = true;

  {
    auto fx = fixtures::non_product_fubini();
    FreeProductVerdict v = is_free_product_map(fx.rep, fx.H, 2);
    FubiniSearchResult chain = find_fubini_chain(fx.rep, fx.H, 4);
    as_expected &= !v.is_free_product && v.report.has_offender("", "10");
    as_expected &= chain.found && chain.sequence == std::vector<int>{0, 1};
    report["non_product_fubini"] = {
        {"patterns", io::pattern_report_to_json(v.report)},
        {"chain_found", chain.found},
        {"sequence", chain.sequence}};
  }
  {
    JensenReport r = jensen_verify(fixtures::symmetrized_ab(), fixtures::m2_trace_eval());
    as_expected &= !r.holds && std::abs(r.min_eig + 0.5) < 1e-12;
    report["m2_trace"] = io::jensen_report_to_json(r);
  }
  {
    NCPoly neg = Complex(-1.0) * fixtures::conjugated_ab2a();
    JensenCounterexample ce = jensen_counterexample(neg, fixtures::neg_ab2a_witness());
    as_expected &= !ce.report.holds && ce.chain_report.ok;
    report["neg_ab2a"] = {{"jensen", io::jensen_report_to_json(ce.report)},
                          {"chain", io::fubini_report_to_json(ce.chain_report)}};
  }
  {
    SemicircularFamily fam = make_semicircular(2, 6, {2.0, 1.0});
    CFreeFunctional F = free_semicircular_functional({2.0, 1.0}, 5);
    const double dev = crosscheck_free_moments(fam, F, 3, 6);
    as_expected &= dev <= 1e-10;
    report["semicircular_crosscheck"] = dev;
  }
  report["as_expected"] = as_expected;
  emit(report, opt.out);
  return as_expected ? kExitHolds : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conditionally free product ucp maps, dilation structure, and "
               "noncommutative Jensen inequalities"};
  app.require_subcommand(1);

  Options opt;
  std::string f_path, mu_path, compressed_path, rep_path, subspace_path, algebras_path;
  std::string mode_name = "separate";
  std::vector<double> radii{2.0, 2.0};
  Eigen::Index k = 1;

  auto* jensen = app.add_subcommand("jensen", "verify f(bar(mu)) <= mu(f)");
  jensen->add_option("-f,--function", f_path, "selfadjoint nc polynomial (JSON)")->required();
  auto* jm = jensen->add_option("--mu", mu_path, "c-free functional (JSON)");
  jensen->add_option("--compressed", compressed_path, "compressed point evaluation (JSON)")
      ->excludes(jm);
  add_common(jensen, opt);

  auto* convexity = app.add_subcommand("convexity", "falsify separate/joint nc convexity");
  convexity->add_option("-f,--function", f_path, "selfadjoint nc polynomial (JSON)")->required();
  convexity->add_option("--algebras", algebras_path, "interval algebra list (JSON)")->required();
  convexity->add_option("--mode", mode_name, "separate or joint")
      ->check(CLI::IsMember({"separate", "joint"}));
  add_common(convexity, opt);
  add_seeded(convexity, opt);

  auto* fubini = app.add_subcommand("fubini", "search for a Fubini-type dilation chain");
  fubini->add_option("--rep", rep_path, "finite representation (JSON)")->required();
  fubini->add_option("--subspace", subspace_path, "initial subspace (JSON)")->required();
  add_common(fubini, opt);

  auto* freeproduct = app.add_subcommand("freeproduct", "decide the free-product property");
  freeproduct->add_option("--rep", rep_path, "finite representation (JSON)");
  freeproduct->add_option("--subspace", subspace_path, "initial subspace (JSON)");
  freeproduct->add_option("--mu", mu_path, "c-free functional (JSON, GNS route)");
  add_common(freeproduct, opt);

  auto* gns = app.add_subcommand("gns", "build the truncated GNS certificate");
  gns->add_option("--mu", mu_path, "c-free functional (JSON)")->required();
  add_common(gns, opt);

  auto* semicircular = app.add_subcommand("semicircular", "randomized inequality experiment");
  semicircular->add_option("--radii", radii, "semicircle radii, one per generator");
  semicircular->add_option("-k", k, "target matrix dimension");
  add_common(semicircular, opt);
  add_seeded(semicircular, opt);

  auto* fixtures_cmd = app.add_subcommand("fixtures", "run the built-in worked examples");
  add_common(fixtures_cmd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }

  try {
    if (jensen->parsed()) {
      if (mu_path.empty() && compressed_path.empty())
        throw NcError("jensen: one of --mu or --compressed is required");
      return run_jensen(f_path, mu_path, compressed_path, opt);
    }
    if (convexity->parsed()) return run_convexity(f_path, algebras_path, mode_name, opt);
    if (fubini->parsed()) return run_fubini(rep_path, subspace_path, opt);
    if (freeproduct->parsed()) {
      if (mu_path.empty() && (rep_path.empty() || subspace_path.empty()))
        throw NcError("freeproduct: provide --mu or both --rep and --subspace");
      return run_freeproduct(rep_path, subspace_path, mu_path, opt);
    }
    if (gns->parsed()) return run_gns(mu_path, opt);
    if (semicircular->parsed()) return run_semicircular(radii, k, opt);
    if (fixtures_cmd->parsed()) return run_fixtures(opt);
  } catch (const NcError& e) {
    std::cerr << json{{"error", e.what()}}.dump(2) << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump(2) << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
