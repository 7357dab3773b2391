#include "ballmap/cli.hpp"

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ballmap/ball_map.hpp"
#include "ballmap/errors.hpp"
#include "ballmap/existence.hpp"
#include "ballmap/lambda.hpp"
#include "ballmap/mapfile.hpp"
#include "ballmap/normal_form.hpp"
#include "ballmap/polyclass.hpp"

namespace ballmap {

namespace {

using nlohmann::json;

struct Globals {
  double tol = 0.0;
  bool tol_set = false;
  int samples = 1000;
  unsigned seed = 0;
  bool json_mode = false;
};

// BALLMAP_TOL overrides the per-command default when --tol is absent
double resolve_tol(const Globals& g, double command_default) {
  if (g.tol_set) return g.tol;
  if (const char* env = std::getenv("BALLMAP_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
    throw std::invalid_argument("BALLMAP_TOL is not a positive number");
  }
  return command_default;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return fnv1a_hex(ss.str());
}

json cvec_json(const Eigen::VectorXcd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v(i).real(), v(i).imag()});
  return a;
}

json cmat_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

json rvec_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

void print_text(const json& report, std::ostream& out) {
  if (report.contains("results"))
    for (const auto& [key, val] : report["results"].items()) out << key << ": " << val.dump() << "\n";
  if (report.contains("error")) {
    const auto& e = report["error"];
    out << "error: " << e["message"].get<std::string>() << " [" << e["code"].get<std::string>()
        << " in " << e["module"].get<std::string>() << ", residual " << e["residual"].dump()
        << "]\n";
  }
}

void emit(const json& report, const Globals& g, std::ostream& out) {
  if (g.json_mode)
    out << report.dump(2) << "\n";
  else
    print_text(report, out);
}

json error_block(const domain_error& e) {
  return {{"code", errc_name(e.code())},
          {"module", e.module_name()},
          {"message", e.what()},
          {"residual", e.residual()}};
}

ValidationOptions load_validation(const Globals& g) {
  ValidationOptions vo;
  vo.samples_per_dim = g.samples;
  vo.seed = g.seed;
  return vo;
}

MapFileData load_checked(const std::string& path, const Globals& g) {
  MapFileData mfd = read_map_file(path);
  require_valid(mfd.map, load_validation(g));
  return mfd;
}

Eigen::VectorXcd parse_point(const std::string& at, int n) {
  std::vector<double> vals;
  std::stringstream ss(at);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      vals.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (...) {
      throw std::invalid_argument("--at expects comma-separated reals, got: " + tok);
    }
  }
  if (static_cast<int>(vals.size()) != 2 * n)
    throw std::invalid_argument("--at needs 2n = " + std::to_string(2 * n) +
                                " reals (re,im per coordinate)");
  Eigen::VectorXcd z(n);
  for (int i = 0; i < n; ++i) z(i) = cd(vals[2 * i], vals[2 * i + 1]);
  return z;
}

Eigen::VectorXd parse_sigma(const std::string& s) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      vals.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (...) {
      throw std::invalid_argument("--sigma expects comma-separated reals, got: " + tok);
    }
  }
  if (vals.empty()) throw std::invalid_argument("--sigma must be nonempty");
  for (size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] < 0.0) throw std::invalid_argument("--sigma entries must be nonnegative");
    if (i > 0 && vals[i] < vals[i - 1]) throw std::invalid_argument("--sigma must be ascending");
  }
  return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

json residuals_json(const std::map<std::string, double>& residuals) {
  json out;
  for (const auto& [k, v] : residuals) out[k] = v;
  return out;
}

struct CommandOutput {
  json results;
  json error;  // null unless the command failed in a structured way
  int exit_code = 0;
};

CommandOutput cmd_validate(const std::string& file, const Globals& g, double tol) {
  ValidationOptions vo = load_validation(g);
  vo.tol = tol;
  MapFileData mfd = read_map_file(file);
  ValidationReport rep = validate(mfd.map, vo);
  CommandOutput out;
  out.results = {{"valid", rep.ok},
                 {"n", mfd.map.n()},
                 {"N", mfd.map.N()},
                 {"degree", mfd.map.degree()},
                 {"failures", rep.failures},
                 {"warnings", rep.warnings},
                 {"division_residual", rep.division_residual},
                 {"min_quotient_on_sphere", rep.min_quotient_on_sphere},
                 {"min_denominator_modulus", rep.min_denominator_modulus},
                 {"signature", {rep.positive, rep.negative, rep.zero}},
                 {"embedding_dimension", rep.embedding_dimension}};
  if (!rep.ok) {
    std::string msg = "validation failed";
    for (const auto& f : rep.failures) msg += "; " + f;
    out.error = {{"code", errc_name(errc::validation_failed)},
                 {"module", "core-poly"},
                 {"message", msg},
                 {"residual", rep.division_residual}};
    out.exit_code = 1;
  }
  return out;
}

CommandOutput cmd_lambda(const std::string& file, const std::string& at, const Globals& g) {
  MapFileData mfd = load_checked(file, g);
  const int n = mfd.map.n();
  Eigen::VectorXcd z = parse_point(at, n);
  if (z.norm() >= 1.0)
    throw domain_error(errc::invalid_argument, "lambda", "point lies outside the open ball",
                       z.norm());
  HermForm r = underlying_form(mfd.map);
  LambdaEval le = lambda_eval(r, mfd.map.degree(), z);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> esc(le.hess_c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esr(le.hess_r);
  CommandOutput out;
  out.results = {{"value", le.value},
                 {"grad", cvec_json(le.grad)},
                 {"grad_norm", le.grad.norm()},
                 {"complex_hessian_min_eig", esc.eigenvalues()(0)},
                 {"real_hessian_min_eig", esr.eigenvalues()(0)},
                 {"at", cvec_json(z)}};
  return out;
}

CommandOutput cmd_critical_point(const std::string& file, const Globals& g, double tol) {
  MapFileData mfd = load_checked(file, g);
  HermForm r = underlying_form(mfd.map);
  SolverOptions so;
  so.grad_tol = tol;
  CriticalPoint cp = find_critical_point(r, mfd.map.degree(), so);
  CommandOutput out;
  out.results = {{"alpha", cvec_json(cp.alpha)},
                 {"alpha_norm", cp.alpha.norm()},
                 {"residual", cp.residual},
                 {"iterations", cp.iterations},
                 {"min_value", cp.min_value}};
  return out;
}

CommandOutput cmd_normalize(const std::string& file, const std::string& out_path, double tol,
                            bool sigma_only) {
  MapFileData mfd = read_map_file(file);
  NormalizeOptions no;
  no.solver.grad_tol = tol;
  NormalForm nf = normalize(mfd.map, no);
  CommandOutput out;
  out.results = {{"sigma", rvec_json(nf.sigma)},
                 {"embedding_dimension", nf.P.N()}};
  if (!sigma_only) {
    out.results["alpha"] = cvec_json(nf.alpha);
    out.results["residuals"] = residuals_json(nf.residuals);
    out.results["normalized_map"] = map_to_json(make_map(nf.P, nf.G));
  }
  if (!out_path.empty()) {
    std::ostringstream sig;
    sig << "sigma =";
    for (Eigen::Index i = 0; i < nf.sigma.size(); ++i) sig << " " << nf.sigma(i);
    std::string name = mfd.name.empty() ? "normal form" : mfd.name + " normal form";
    write_map_file(out_path, make_map(nf.P, nf.G), name, sig.str());
    out.results["out"] = out_path;
  }
  return out;
}

CommandOutput cmd_equivalent(const std::string& file_a, const std::string& file_b, double tol) {
  MapFileData a = read_map_file(file_a);
  MapFileData b = read_map_file(file_b);
  EquivalenceOptions eo;
  eo.match_tol = tol;
  EquivalenceVerdict verdict = spherically_equivalent(a.map, b.map, eo);
  CommandOutput out;
  const char* status = verdict.status == Equivalence::Equivalent     ? "Equivalent"
                       : verdict.status == Equivalence::Inequivalent ? "Inequivalent"
                                                                     : "Inconclusive";
  out.results = {{"status", status}, {"reason", verdict.reason}};
  if (verdict.witness) {
    out.results["witness"] = {{"V", cmat_json(verdict.witness->V)},
                              {"U", cmat_json(verdict.witness->U)},
                              {"residual", verdict.witness->residual}};
  }
  return out;
}

CommandOutput cmd_classify(const std::string& file, const Globals& g, double tol) {
  MapFileData mfd = load_checked(file, g);
  ClassifyOptions co;
  co.rank_tol = tol;
  co.singular_tol = tol;
  co.samples_per_dim = g.samples;
  co.seed = g.seed;
  PolyClassification cls = classify_poly_equiv(mfd.map, co);
  CommandOutput out;
  out.results = {{"model", poly_model_name(cls.model)},
                 {"residual", cls.residual},
                 {"components", cls.Prep.N()},
                 {"max_embed_dim", max_embed_dim(mfd.map.n(), mfd.map.degree())}};
  if (cls.gamma) out.results["gamma"] = *cls.gamma;
  if (g.json_mode) {
    json rep;
    rep["Prep"] = json::array();
    for (const auto& c : cls.Prep.comps) {
      json arr = json::array();
      for (const auto& [e, cf] : c.terms()) arr.push_back({{"exponents", e}, {"coeff", {cf.real(), cf.imag()}}});
      rep["Prep"].push_back(arr);
    }
    if (cls.Grep) {
      json arr = json::array();
      for (const auto& [e, cf] : cls.Grep->terms())
        arr.push_back({{"exponents", e}, {"coeff", {cf.real(), cf.imag()}}});
      rep["Grep"] = arr;
    }
    out.results["representative"] = rep;
  }
  return out;
}

CommandOutput cmd_construct3(const std::string& sigma_str, bool search, int max_iter,
                             const Globals& g) {
  Eigen::VectorXd sigma = parse_sigma(sigma_str);
  ExistenceResult res = search ? feasibility_search(sigma, max_iter) : degree3_numerator(sigma);
  CommandOutput out;
  out.results = {{"status", existence_status_name(res.status)},
                 {"feasible", res.feasible},
                 {"min_eig", res.min_eig},
                 {"iterations", res.iterations},
                 {"sigma", rvec_json(sigma)}};
  if (!res.note.empty()) out.results["note"] = res.note;
  if (res.feasible) {
    out.results["residual"] = res.residual;
    out.results["N"] = res.map->N();
    out.results["map"] = map_to_json(*res.map, "construct3", "degree-3 numerator");
  } else {
    errc code = res.status == ExistenceStatus::NoConvergence ? errc::no_convergence : errc::infeasible;
    out.error = {{"code", errc_name(code)},
                 {"module", "existence"},
                 {"message", res.note.empty() ? "no numerator found" : res.note},
                 {"residual", res.min_eig}};
    out.exit_code = 1;
  }
  return out;
}

}  // namespace

int cli_run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rational proper maps between unit balls: validation, exhaustion "
               "minimization, normal forms, equivalence, polynomial models, and "
               "degree-3 existence"};
  app.require_subcommand(1);
  Globals g;

  auto add_globals = [&](CLI::App* sub) {
    sub->add_option_function<double>(
           "--tol",
           [&g](const double& v) {
             g.tol = v;
             g.tol_set = true;
           },
           "primary tolerance of this command")
        ->check(CLI::PositiveNumber);
    sub->add_option("--samples", g.samples, "sphere samples per dimension")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", g.seed, "seed for quasi-random sampling");
    sub->add_flag("--json", g.json_mode, "machine-readable report");
  };

  std::string file, file_b, at_str, out_path, sigma_str;
  bool do_search = false;
  int max_iter = 20000;

  CLI::App* c_validate = app.add_subcommand("validate", "check that a map file is a rational proper ball map");
  c_validate->add_option("map", file, "map file")->required();
  add_globals(c_validate);

  CLI::App* c_lambda = app.add_subcommand("lambda", "evaluate the exhaustion function at a point");
  c_lambda->add_option("map", file, "map file")->required();
  c_lambda->add_option("--at", at_str, "2n comma-separated reals, re and im per coordinate")
      ->required();
  add_globals(c_lambda);

  CLI::App* c_critical = app.add_subcommand("critical-point", "minimize the exhaustion function");
  c_critical->add_option("map", file, "map file")->required();
  add_globals(c_critical);

  CLI::App* c_normalize = app.add_subcommand("normalize", "compute the normal form");
  c_normalize->add_option("map", file, "map file")->required();
  c_normalize->add_option("--out", out_path, "write the normalized map to this file");
  add_globals(c_normalize);

  CLI::App* c_invariants = app.add_subcommand("invariants", "spherical invariants sigma");
  c_invariants->add_option("map", file, "map file")->required();
  add_globals(c_invariants);

  CLI::App* c_equileft = app.add_subcommand("equivalent", "decide spherical equivalence of two maps");
  c_equileft->add_option("mapA", file, "first map file")->required();
  c_equileft->add_option("mapB", file_b, "second map file")->required();
  add_globals(c_equileft);

  CLI::App* c_classify = app.add_subcommand("classify", "polynomial model for maximal embedding dimension");
  c_classify->add_option("map", file, "map file")->required();
  add_globals(c_classify);

  CLI::App* c_construct = app.add_subcommand("construct3", "degree-3 map with prescribed sigma");
  c_construct->add_option("--sigma", sigma_str, "comma-separated ascending nonnegative sigma")
      ->required();
  c_construct->add_flag("--search", do_search, "alternating-projection search over all quotients");
  c_construct->add_option("--max-iter", max_iter, "projection iteration cap")
      ->check(CLI::PositiveNumber);
  add_globals(c_construct);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  json report;
  auto start = std::chrono::steady_clock::now();
  CommandOutput res;
  double tol_used = 0.0;
  try {
    if (app.got_subcommand(c_validate)) {
      report["command"] = "validate";
      tol_used = resolve_tol(g, 1e-11);
      report["inputs"] = {{{"path", file}, {"digest", digest_file(file)}}};
      res = cmd_validate(file, g, tol_used);
    } else if (app.got_subcommand(c_lambda)) {
      report["command"] = "lambda";
      tol_used = resolve_tol(g, 1e-11);
      report["inputs"] = {{{"path", file}, {"digest", digest_file(file)}}};
      res = cmd_lambda(file, at_str, g);
    } else if (app.got_subcommand(c_critical)) {
      report["command"] = "critical-point";
      tol_used = resolve_tol(g, 1e-10);
      report["inputs"] = {{{"path", file}, {"digest", digest_file(file)}}};
      res = cmd_critical_point(file, g, tol_used);
    } else if (app.got_subcommand(c_normalize)) {
      report["command"] = "normalize";
      tol_used = resolve_tol(g, 1e-10);
      report["inputs"] = {{{"path", file}, {"digest", digest_file(file)}}};
      res = cmd_normalize(file, out_path, tol_used, false);
    } else if (app.got_subcommand(c_invariants)) {
      report["command"] = "invariants";
      tol_used = resolve_tol(g, 1e-10);
      report["inputs"] = {{{"path", file}, {"digest", digest_file(file)}}};
      res = cmd_normalize(file, "", tol_used, true);
    } else if (app.got_subcommand(c_equileft)) {
      report["command"] = "equivalent";
      tol_used = resolve_tol(g, 1e-8);
      report["inputs"] = {{{"path", file}, {"digest", digest_file(file)}},
                          {{"path", file_b}, {"digest", digest_file(file_b)}}};
      res = cmd_equivalent(file, file_b, tol_used);
    } else if (app.got_subcommand(c_classify)) {
      report["command"] = "classify";
      tol_used = resolve_tol(g, 1e-9);
      report["inputs"] = {{{"path", file}, {"digest", digest_file(file)}}};
      res = cmd_classify(file, g, tol_used);
    } else {
      report["command"] = "construct3";
      tol_used = resolve_tol(g, 1e-11);
      report["inputs"] = {{{"sigma", sigma_str}, {"digest", fnv1a_hex(sigma_str)}}};
      res = cmd_construct3(sigma_str, do_search, max_iter, g);
    }
  } catch (const domain_error& e) {
    report["error"] = error_block(e);
    report["tolerances"] = {{"tol", tol_used}, {"samples", g.samples}, {"seed", g.seed}};
    emit(report, g, out);
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report["tolerances"] = {{"tol", tol_used}, {"samples", g.samples}, {"seed", g.seed}};
  report["wall_ms"] = ms;
  report["results"] = res.results;
  if (!res.error.is_null()) report["error"] = res.error;
  emit(report, g, out);
  return res.exit_code;
}

int cli_run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_run(std::move(args), std::cout, std::cerr);
}

}  // namespace ballmap
