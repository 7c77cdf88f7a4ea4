#include "flatpoly/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "flatpoly/baselines.hpp"
#include "flatpoly/flatsearch.hpp"
#include "flatpoly/inequalities.hpp"
#include "flatpoly/levy.hpp"
#include "flatpoly/norms.hpp"

namespace flatpoly {

namespace {

double parse_p(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity") return kInf;
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse exponent: " + s);
  }
}

std::string p_name(double p) { return (p == kInf) ? "inf" : fmt_double(p); }

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::string join_ps(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + p_name(v[i]);
  return out;
}

NormBody body_from_name(const ExperimentConfig& cfg, int n) {
  const std::string& name = cfg.body;
  if (name == "l1") return NormBody::lp(n, 1.0);
  if (name == "l2" || name == "ball") return NormBody::lp(n, 2.0);
  if (name == "linf") return NormBody::lp(n, kInf);
  if (name.rfind("lp:", 0) == 0) return NormBody::lp(n, parse_p(name.substr(3)));
  if (name == "ellipsoid") {
    // Random SPD shape with axes in [0.5, 2]; Haar-rotated, seeded.
    Rng rng(cfg.seed ^ 0xb0d7ULL);
    const Subspace rot = random_subspace(n, n, cfg.seed ^ 0x105eULL);
    Eigen::VectorXd diag(n);
    for (int i = 0; i < n; ++i) diag[i] = rng.uniform(0.5, 2.0);
    return NormBody::ellipsoid(rot.basis * diag.asDiagonal() * rot.basis.transpose());
  }
  if (name.rfind("induced:", 0) == 0) {
    const double p = parse_p(name.substr(8));
    return NormBody::induced(spectrum_for_dim(manifold_from_name(cfg.manifold), n), p);
  }
  throw std::invalid_argument("unknown body: " + name);
}

void require_seed(const ExperimentConfig& cfg) {
  if (!cfg.seed_set) throw std::invalid_argument("seed is mandatory");
}

Report base_report(const ExperimentConfig& cfg) {
  Report rep;
  rep.command = cfg.command;
  rep.version = FLATPOLY_VERSION;
  return rep;
}

Report run_levy(const ExperimentConfig& cfg) {
  Report rep = base_report(cfg);
  rep.set_config("manifold", cfg.manifold);
  rep.set_config("n", join_ints(cfg.n_list));
  rep.set_config("p", join_ps(cfg.p_list));
  rep.set_config("samples", std::to_string(cfg.samples));
  rep.set_config("seed", std::to_string(cfg.seed));

  std::vector<SpectrumSelection> spectra;
  for (int n : cfg.n_list)
    spectra.push_back(spectrum_for_dim(manifold_from_name(cfg.manifold), n));
  const auto rows = theorem2_sweep(spectra, cfg.p_list, cfg.samples, cfg.seed);

  rep.columns = {"n", "p", "levy_mean", "stderr", "normalized"};
  for (const auto& r : rows)
    rep.rows.push_back({std::to_string(r.n), p_name(r.p), fmt_double(r.mean),
                        fmt_double(r.stderr_), fmt_double(r.normalized)});
  return rep;
}

Report run_flat(const ExperimentConfig& cfg) {
  Report rep = base_report(cfg);
  const double p = cfg.p_list.front();
  rep.set_config("manifold", cfg.manifold);
  rep.set_config("n", join_ints(cfg.n_list));
  rep.set_config("epsilon", cfg.epsilon);
  rep.set_config("p", p_name(p));
  rep.set_config("q", p_name(cfg.q));
  rep.set_config("trials", std::to_string(cfg.trials));
  rep.set_config("restarts", std::to_string(cfg.restarts));
  rep.set_config("iterations", std::to_string(cfg.iterations));
  rep.set_config("seed", std::to_string(cfg.seed));

  const auto rows =
      theorem3_experiment(manifold_from_name(cfg.manifold), cfg.n_list, cfg.epsilon, p,
                          cfg.q, cfg.trials, cfg.seed, cfg.restarts, cfg.iterations);

  rep.columns = {"n", "trial", "ratio"};
  for (const auto& r : rows)
    for (std::size_t t = 0; t < r.trial_ratios.size(); ++t)
      rep.rows.push_back(
          {std::to_string(r.n), std::to_string(t), fmt_double(r.trial_ratios[t])});
  for (const auto& r : rows) {
    rep.set_summary("worst_ratio_n" + std::to_string(r.n), r.worst_ratio);
    rep.set_summary("rho_n" + std::to_string(r.n), r.rho);
    rep.set_summary("normalized_n" + std::to_string(r.n), r.normalized);
  }
  return rep;
}

Report run_nikolskii(const ExperimentConfig& cfg) {
  Report rep = base_report(cfg);
  const double p = cfg.p_list.front();
  rep.set_config("manifold", cfg.manifold);
  rep.set_config("n", join_ints(cfg.n_list));
  rep.set_config("p", p_name(p));
  rep.set_config("q", p_name(cfg.q));
  rep.set_config("trials", std::to_string(cfg.trials));
  rep.set_config("seed", std::to_string(cfg.seed));

  rep.columns = {"n", "p", "q", "max_ratio", "kernel_ratio", "bound", "passed"};
  for (int n : cfg.n_list) {
    const SpectrumSelection spectrum = spectrum_for_dim(manifold_from_name(cfg.manifold), n);
    const NikolskiiReport r = nikolskii_check(spectrum, p, cfg.q, cfg.trials, cfg.seed);
    rep.rows.push_back({std::to_string(spectrum.n), p_name(p), p_name(cfg.q),
                        fmt_double(r.max_ratio), fmt_double(r.kernel_ratio),
                        fmt_double(r.bound), r.passed ? "1" : "0"});
  }
  return rep;
}

Report run_convex(const ExperimentConfig& cfg, int* exit_hint) {
  Report rep = base_report(cfg);
  const int n = cfg.n_list.front();
  rep.set_config("check", cfg.check);
  rep.set_config("body", cfg.body);
  rep.set_config("n", std::to_string(n));
  rep.set_config("samples", std::to_string(cfg.samples));
  rep.set_config("seed", std::to_string(cfg.seed));
  if (cfg.section_dim > 0) rep.set_config("m", std::to_string(cfg.section_dim));

  if (cfg.check == "omega") {
    const int m = (cfg.section_dim > 0) ? cfg.section_dim : (n + 1) / 2;
    const OmegaValue v = omega(n, m);
    rep.columns = {"n", "m", "paper_value", "corrected_value"};
    rep.rows.push_back({std::to_string(n), std::to_string(m), fmt_double(v.paper_value),
                        fmt_double(v.corrected_value)});
    return rep;
  }

  NormBody body = body_from_name(cfg, n);
  InequalityReport r;
  if (cfg.check == "urysohn") {
    r = check_urysohn(body, cfg.samples, cfg.samples, cfg.seed);
  } else if (cfg.check == "santalo") {
    std::optional<Subspace> L;
    if (cfg.section_dim > 0 && cfg.section_dim < n)
      L = random_subspace(n, cfg.section_dim, cfg.seed + 101);
    r = check_santalo(body, L, cfg.samples, cfg.seed);
  } else if (cfg.check == "polar") {
    const Subspace L = (cfg.section_dim > 0 && cfg.section_dim < n)
                           ? random_subspace(n, cfg.section_dim, cfg.seed + 101)
                           : full_space(n);
    r = check_polar_containment(body, L, cfg.samples, cfg.seed);
  } else if (cfg.check == "central") {
    const int m = (cfg.section_dim > 0 && cfg.section_dim < n) ? cfg.section_dim : n - 1;
    if (m < 1) throw std::invalid_argument("central check needs n >= 2");
    const Subspace L = random_subspace(n, m, cfg.seed + 101);
    // Offsets along the orthogonal complement.
    Eigen::VectorXd w = Rng(cfg.seed + 7).gaussian_vector(n);
    w -= L.basis * (L.basis.transpose() * w);
    if (w.norm() < 1e-12) throw std::invalid_argument("degenerate complement direction");
    w.normalize();
    r = check_central_section_max(body, L, {0.25 * w, 0.5 * w}, cfg.samples, cfg.seed);
  } else if (cfg.check == "bm") {
    r = check_bourgain_milman(body, cfg.samples, cfg.seed, cfg.c2);
  } else if (cfg.check == "volume") {
    body = body.scaled(1.0 / body.circumradius());  // fit inside the unit ball
    r = check_volume_lower_bound(body, cfg.samples, cfg.seed, cfg.c1, cfg.c2);
  } else {
    throw std::invalid_argument("unknown check: " + cfg.check);
  }

  rep.columns = {"check", "lhs", "rhs", "slack", "stderr_budget", "status"};
  rep.rows.push_back({r.name, fmt_double(r.lhs), fmt_double(r.rhs), fmt_double(r.slack),
                      fmt_double(r.stderr_budget), check_status_name(r.status)});
  for (const auto& [k, v] : r.diagnostics) rep.set_summary(k, v);
  rep.set_summary("inputs_digest", r.inputs_digest);
  if (!r.note.empty()) rep.set_summary("note", r.note);
  if (exit_hint && r.status == CheckStatus::Inconclusive) *exit_hint = 3;
  return rep;
}

Report run_baseline(const ExperimentConfig& cfg) {
  Report rep = base_report(cfg);
  rep.set_config("task", cfg.task);
  rep.set_config("seed", std::to_string(cfg.seed));

  if (cfg.task == "moment") {
    const int p = static_cast<int>(cfg.p_list.front());
    rep.set_config("N", std::to_string(cfg.length));
    rep.set_config("p", std::to_string(p));
    rep.set_config("trials", std::to_string(cfg.trials));
    const MomentCheck m = moment_check(cfg.length, p, cfg.trials, cfg.seed);
    rep.columns = {"N", "p", "trials", "ratio", "target", "passed"};
    rep.rows.push_back({std::to_string(cfg.length), std::to_string(p),
                        std::to_string(cfg.trials), fmt_double(m.ratio),
                        fmt_double(m.target), m.passed ? "1" : "0"});
    return rep;
  }
  if (cfg.task == "rudin") {
    rep.set_config("N", std::to_string(cfg.length));
    rep.set_config("attempts", std::to_string(cfg.attempts));
    const RudinCheck r = rudin_check(cfg.length, cfg.attempts, cfg.seed);
    rep.columns = {"N", "attempts", "best_sup", "bound", "passed"};
    rep.rows.push_back({std::to_string(cfg.length), std::to_string(cfg.attempts),
                        fmt_double(r.best_sup),
                        fmt_double(5.0 * std::sqrt(static_cast<double>(cfg.length))),
                        r.passed ? "1" : "0"});
    return rep;
  }
  if (cfg.task == "rudinshapiro") {
    rep.set_config("k", std::to_string(cfg.rs_order));
    rep.columns = {"k", "N", "grid_sup", "bound", "passed"};
    for (int k = 0; k <= cfg.rs_order; ++k) {
      const SignSequence seq = rudin_shapiro(k);
      const double sup = sign_poly_sup(seq);
      const double bound = std::sqrt(2.0 * seq.length());
      rep.rows.push_back({std::to_string(k), std::to_string(seq.length()), fmt_double(sup),
                          fmt_double(bound), (sup <= bound) ? "1" : "0"});
    }
    return rep;
  }
  throw std::invalid_argument("unknown baseline task: " + cfg.task);
}

Report run_report(const ExperimentConfig& cfg) {
  if (cfg.in_path.empty()) throw std::invalid_argument("report needs --in");
  std::ifstream in(cfg.in_path);
  if (!in) throw std::invalid_argument("cannot open " + cfg.in_path);
  return Report::read_json(in);
}

}  // namespace

ExperimentConfig config_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed config JSON: ") + e.what());
  }

  ExperimentConfig cfg;
  try {
    cfg.command = j.at("command").get<std::string>();
    if (j.contains("manifold")) cfg.manifold = j["manifold"].get<std::string>();
    if (j.contains("n")) {
      if (j["n"].is_array())
        cfg.n_list = j["n"].get<std::vector<int>>();
      else
        cfg.n_list = {j["n"].get<int>()};
    }
    if (j.contains("p")) {
      cfg.p_list.clear();
      if (j["p"].is_array())
        for (const auto& v : j["p"])
          cfg.p_list.push_back(v.is_string() ? parse_p(v.get<std::string>())
                                             : v.get<double>());
      else
        cfg.p_list.push_back(j["p"].is_string() ? parse_p(j["p"].get<std::string>())
                                                : j["p"].get<double>());
    }
    if (j.contains("q"))
      cfg.q = j["q"].is_string() ? parse_p(j["q"].get<std::string>()) : j["q"].get<double>();
    if (j.contains("epsilon")) cfg.epsilon = j["epsilon"].get<double>();
    if (j.contains("samples")) cfg.samples = j["samples"].get<long>();
    if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
    if (j.contains("restarts")) cfg.restarts = j["restarts"].get<int>();
    if (j.contains("iterations")) cfg.iterations = j["iterations"].get<int>();
    if (j.contains("check")) cfg.check = j["check"].get<std::string>();
    if (j.contains("body")) cfg.body = j["body"].get<std::string>();
    if (j.contains("m")) cfg.section_dim = j["m"].get<int>();
    if (j.contains("c1")) cfg.c1 = j["c1"].get<double>();
    if (j.contains("c2")) cfg.c2 = j["c2"].get<double>();
    if (j.contains("task")) cfg.task = j["task"].get<std::string>();
    if (j.contains("N")) cfg.length = j["N"].get<int>();
    if (j.contains("attempts")) cfg.attempts = j["attempts"].get<int>();
    if (j.contains("k")) cfg.rs_order = j["k"].get<int>();
    if (j.contains("in")) cfg.in_path = j["in"].get<std::string>();
    if (j.contains("out")) cfg.out_path = j["out"].get<std::string>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("seed")) {
      cfg.seed = j["seed"].get<std::uint64_t>();
      cfg.seed_set = true;
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad config field: ") + e.what());
  }
  return cfg;
}

Report run_experiment(const ExperimentConfig& cfg, int* exit_hint) {
  if (exit_hint) *exit_hint = 0;
  if (cfg.command != "report") require_seed(cfg);
  if (cfg.command == "levy") return run_levy(cfg);
  if (cfg.command == "flat") return run_flat(cfg);
  if (cfg.command == "nikolskii") return run_nikolskii(cfg);
  if (cfg.command == "convex") return run_convex(cfg, exit_hint);
  if (cfg.command == "baseline") return run_baseline(cfg);
  if (cfg.command == "report") return run_report(cfg);
  throw std::invalid_argument("unknown command: " + cfg.command);
}

namespace {

void add_common(CLI::App* sub, ExperimentConfig& cfg, std::string& seed_str) {
  sub->add_option("--seed", seed_str, "RNG seed (mandatory)")->required();
  sub->add_option("--out", cfg.out_path, "output path (stdout when omitted)");
  sub->add_option("--format", cfg.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

std::vector<double> parse_p_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_p(item));
  if (out.empty()) throw std::invalid_argument("empty exponent list");
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"flatpoly: numerical experiments on flat polynomials and convex bodies",
               "flatpoly"};
  app.require_subcommand(0, 1);

  ExperimentConfig cfg;
  std::string config_path, seed_str, n_str, p_str, q_str;

  app.add_option("--config", config_path, "JSON config file (same field names as flags)");

  auto* levy = app.add_subcommand(
      "levy",
      "Levy means of induced L_p coefficient norms.\n"
      "CSV columns: n,p,levy_mean,stderr,normalized");
  levy->add_option("--manifold", cfg.manifold);
  levy->add_option("--n", n_str, "spectrum dimension(s), comma separated");
  levy->add_option("--p", p_str, "exponent(s), comma separated; inf allowed");
  levy->add_option("--samples", cfg.samples);
  add_common(levy, cfg, seed_str);

  auto* flat = app.add_subcommand(
      "flat",
      "ratio minimization over Haar subspaces.\n"
      "CSV columns: n,trial,ratio; summary: worst_ratio_n*, rho_n*, normalized_n*");
  flat->add_option("--manifold", cfg.manifold);
  flat->add_option("--n", n_str);
  flat->add_option("--epsilon", cfg.epsilon);
  flat->add_option("--p", p_str);
  flat->add_option("--q", q_str);
  flat->add_option("--trials", cfg.trials);
  flat->add_option("--restarts", cfg.restarts);
  flat->add_option("--iters", cfg.iterations);
  add_common(flat, cfg, seed_str);

  auto* nik = app.add_subcommand(
      "nikolskii",
      "dimension-bound checks for norm ratios.\n"
      "CSV columns: n,p,q,max_ratio,kernel_ratio,bound,passed");
  nik->add_option("--manifold", cfg.manifold);
  nik->add_option("--n", n_str);
  nik->add_option("--p", p_str);
  nik->add_option("--q", q_str);
  nik->add_option("--trials", cfg.trials);
  add_common(nik, cfg, seed_str);

  auto* convex = app.add_subcommand(
      "convex",
      "convex-geometry inequality checks.\n"
      "CSV columns: check,lhs,rhs,slack,stderr_budget,status; diagnostics in the summary");
  convex->add_option("--check", cfg.check,
                     "urysohn|santalo|polar|central|bm|volume|omega");
  convex->add_option("--body", cfg.body, "l1|l2|linf|ball|lp:<p>|ellipsoid|induced:<p>");
  convex->add_option("--n", n_str);
  convex->add_option("--m", cfg.section_dim, "section dimension (0: per-check default)");
  convex->add_option("--samples", cfg.samples);
  convex->add_option("--manifold", cfg.manifold);
  convex->add_option("--c1", cfg.c1, "Urysohn constant for the volume bound");
  convex->add_option("--c2", cfg.c2, "Bourgain-Milman screen constant");
  add_common(convex, cfg, seed_str);

  auto* base = app.add_subcommand(
      "baseline",
      "classical flat-polynomial baselines.\n"
      "CSV columns: moment: N,p,trials,ratio,target,passed; rudin: N,attempts,best_sup,bound,passed;\n"
      "rudinshapiro: k,N,grid_sup,bound,passed");
  base->add_option("--task", cfg.task, "moment|rudin|rudinshapiro");
  base->add_option("--N", cfg.length);
  base->add_option("--p", p_str);
  base->add_option("--trials", cfg.trials);
  base->add_option("--attempts", cfg.attempts);
  base->add_option("--k", cfg.rs_order);
  add_common(base, cfg, seed_str);

  auto* report = app.add_subcommand("report", "re-emit a JSON report (digest verified)");
  report->add_option("--in", cfg.in_path)->required();
  report->add_option("--out", cfg.out_path);
  report->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (!config_path.empty()) {
      if (app.get_subcommands().size() > 0)
        throw std::invalid_argument("--config excludes subcommands");
      cfg = config_from_json_file(config_path);
    } else {
      const auto subs = app.get_subcommands();
      if (subs.empty()) throw std::invalid_argument("no command given (see --help)");
      cfg.command = subs.front()->get_name();
      if (!n_str.empty()) cfg.n_list = parse_int_list(n_str);
      if (!p_str.empty()) cfg.p_list = parse_p_list(p_str);
      if (!q_str.empty()) cfg.q = parse_p(q_str);
      if (!seed_str.empty()) {
        cfg.seed = std::stoull(seed_str);
        cfg.seed_set = true;
      }
    }

    int exit_hint = 0;
    const Report rep = run_experiment(cfg, &exit_hint);
    const std::string text = rep.to_string(cfg.format);
    if (cfg.out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(cfg.out_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + cfg.out_path);
      out << text;
    }
    return exit_hint;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace flatpoly
