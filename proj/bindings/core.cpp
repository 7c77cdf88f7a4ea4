#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flatpoly/baselines.hpp"
#include "flatpoly/cli.hpp"
#include "flatpoly/flatsearch.hpp"
#include "flatpoly/inequalities.hpp"
#include "flatpoly/levy.hpp"
#include "flatpoly/norms.hpp"

namespace py = pybind11;
using namespace flatpoly;

namespace {

Coord to_coord(const std::vector<double>& x) {
  Coord c{0.0, 0.0, 0.0};
  if (x.size() > 3) throw std::invalid_argument("points have at most 3 coordinates");
  for (std::size_t i = 0; i < x.size(); ++i) c[i] = x[i];
  return c;
}

py::dict report_to_dict(const InequalityReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["slack"] = r.slack;
  d["passed"] = r.passed;
  d["status"] = check_status_name(r.status);
  d["stderr_budget"] = r.stderr_budget;
  d["inputs_digest"] = r.inputs_digest;
  d["note"] = r.note;
  d["diagnostics"] = r.diagnostics;
  return d;
}

py::dict search_to_dict(const FlatSearchResult& r) {
  py::dict d;
  d["witness"] = r.witness;
  d["ratio"] = r.ratio;
  d["method"] = r.method;
  d["iterations"] = r.iterations;
  d["restarts"] = r.restarts;
  d["converged"] = r.converged;
  d["restart_ratios"] = r.restart_ratios;
  d["diagnostics"] = r.diagnostics;
  return d;
}

py::dict volume_to_dict(const VolumeEstimate& v) {
  py::dict d;
  d["value"] = v.value;
  d["stderr"] = v.stderr_;
  d["samples"] = v.samples;
  return d;
}

Subspace subspace_from(const Eigen::MatrixXd& basis) { return span_of(basis); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Flat polynomials on homogeneous manifolds and the convex-body "
            "machinery behind them";
  m.attr("__version__") = FLATPOLY_VERSION;
  m.attr("INF") = kInf;

  py::class_<SpectrumSelection>(m, "Spectrum")
      .def_property_readonly("n", [](const SpectrumSelection& s) { return s.n; })
      .def_property_readonly("blocks", [](const SpectrumSelection& s) { return s.blocks; })
      .def_property_readonly("manifold",
                             [](const SpectrumSelection& s) {
                               return manifold_name(s.system->manifold());
                             })
      .def("max_degree", &SpectrumSelection::max_degree)
      .def("evaluate",
           [](const SpectrumSelection& s, const std::vector<double>& x) {
             return s.evaluate(to_coord(x));
           },
           py::arg("point"));

  m.def("spectrum",
        [](const std::string& manifold, int n) {
          return spectrum_for_dim(manifold_from_name(manifold), n);
        },
        py::arg("manifold"), py::arg("n"),
        "Eigenspace-block spectrum of total dimension <= n on torus1/2/3 or sphere2.");

  m.def("kernel",
        [](const SpectrumSelection& s, const std::vector<double>& x,
           const std::vector<double>& y) { return kernel(s, to_coord(x), to_coord(y)); },
        py::arg("spectrum"), py::arg("x"), py::arg("y"));

  m.def("kernel_column",
        [](const SpectrumSelection& s, const std::vector<double>& y) {
          return kernel_column(s, to_coord(y));
        },
        py::arg("spectrum"), py::arg("y"));

  m.def("class_k_verify",
        [](const SpectrumSelection& s, int points, double tol, std::uint64_t seed) {
          Rng rng(seed);
          std::vector<Coord> pts;
          for (int i = 0; i < points; ++i)
            pts.push_back(random_point(s.system->manifold(), rng));
          const ClassKReport rep = class_k_verify(s, pts, tol);
          return py::make_tuple(rep.ok, rep.max_deviation);
        },
        py::arg("spectrum"), py::arg("points") = 500, py::arg("tol") = 1e-8,
        py::arg("seed") = 1);

  m.def("induced_norm",
        [](const SpectrumSelection& s, const Eigen::VectorXd& alpha, double p) {
          return induced_norm(s, alpha, p);
        },
        py::arg("spectrum"), py::arg("alpha"), py::arg("p"),
        "L_p norm of the polynomial with the given coefficients (p = inf allowed).");

  m.def("linf_norm",
        [](const SpectrumSelection& s, const Eigen::VectorXd& alpha, int grid_density,
           int refine_steps) {
          const LinfResult r = linf_norm(Polynomial{s, alpha}, grid_density, refine_steps);
          return py::make_tuple(r.value, r.uncertainty);
        },
        py::arg("spectrum"), py::arg("alpha"), py::arg("grid_density") = 8,
        py::arg("refine_steps") = 40);

  m.def("nikolskii_check",
        [](const SpectrumSelection& s, double p, double q, int trials, std::uint64_t seed) {
          const NikolskiiReport r = nikolskii_check(s, p, q, trials, seed);
          py::dict d;
          d["max_ratio"] = r.max_ratio;
          d["kernel_ratio"] = r.kernel_ratio;
          d["bound"] = r.bound;
          d["passed"] = r.passed;
          return d;
        },
        py::arg("spectrum"), py::arg("p"), py::arg("q"), py::arg("trials") = 1000,
        py::arg("seed") = 1);

  py::class_<NormBody>(m, "NormBody")
      .def_static("lp", &NormBody::lp, py::arg("n"), py::arg("p"))
      .def_static("ellipsoid", &NormBody::ellipsoid, py::arg("shape"))
      .def_static("induced",
                  [](const SpectrumSelection& s, double p) { return NormBody::induced(s, p); },
                  py::arg("spectrum"), py::arg("p"))
      .def("scaled", &NormBody::scaled, py::arg("c"))
      .def_property_readonly("dim", &NormBody::dim)
      .def("norm", &NormBody::norm, py::arg("x"))
      .def("dual_norm",
           [](const NormBody& b, const Eigen::VectorXd& x, int restarts, int iterations,
              std::uint64_t seed) {
             const DualNormValue d = b.dual_norm(x, restarts, iterations, seed);
             py::dict out;
             out["value"] = d.value;
             out["exact"] = d.exact;
             out["converged"] = d.converged;
             return out;
           },
           py::arg("x"), py::arg("restarts") = 8, py::arg("iterations") = 200,
           py::arg("seed") = 1)
      .def("circumradius", &NormBody::circumradius)
      .def("digest", &NormBody::digest);

  m.def("ball_volume", &ball_volume, py::arg("n"));

  m.def("mc_volume",
        [](const NormBody& body, long samples, std::uint64_t seed,
           const std::optional<Eigen::MatrixXd>& subspace) {
          std::optional<Subspace> L;
          if (subspace) L = subspace_from(*subspace);
          return volume_to_dict(mc_volume(body, L, samples, seed));
        },
        py::arg("body"), py::arg("samples"), py::arg("seed"),
        py::arg("subspace") = std::nullopt);

  m.def("diameter_of_section",
        [](const NormBody& body, const Eigen::MatrixXd& basis, int restarts,
           std::uint64_t seed) {
          const DiameterResult d = diameter_of_section(body, subspace_from(basis), restarts, seed);
          py::dict out;
          out["value"] = d.value;
          out["witness"] = d.witness;
          out["converged"] = d.converged;
          return out;
        },
        py::arg("body"), py::arg("basis"), py::arg("restarts") = 32, py::arg("seed") = 1);

  m.def("sphere_sample", &sphere_sample, py::arg("n"), py::arg("count"), py::arg("seed"));

  m.def("levy_mean",
        [](const NormBody& body, long samples, std::uint64_t seed) {
          const LevyMeanEstimate est = levy_mean(body, samples, seed);
          py::dict d;
          d["value"] = est.value;
          d["stderr"] = est.stderr_;
          d["samples"] = est.samples;
          d["body_digest"] = est.body_digest;
          return d;
        },
        py::arg("body"), py::arg("samples") = 20000, py::arg("seed") = 1);

  m.def("theorem2_sweep",
        [](const std::string& manifold, const std::vector<int>& n_list,
           const std::vector<double>& p_list, long samples, std::uint64_t seed) {
          std::vector<SpectrumSelection> spectra;
          for (int n : n_list)
            spectra.push_back(spectrum_for_dim(manifold_from_name(manifold), n));
          py::list rows;
          for (const Theorem2Row& r : theorem2_sweep(spectra, p_list, samples, seed)) {
            py::dict d;
            d["n"] = r.n;
            d["p"] = r.p;
            d["mean"] = r.mean;
            d["stderr"] = r.stderr_;
            d["normalized"] = r.normalized;
            rows.append(d);
          }
          return rows;
        },
        py::arg("manifold"), py::arg("n_list"), py::arg("p_list"),
        py::arg("samples") = 20000, py::arg("seed") = 1);

  m.def("check_urysohn",
        [](const NormBody& b, long vol_samples, long levy_samples, std::uint64_t seed) {
          return report_to_dict(check_urysohn(b, vol_samples, levy_samples, seed));
        },
        py::arg("body"), py::arg("vol_samples") = 100000, py::arg("levy_samples") = 20000,
        py::arg("seed") = 1);
  m.def("check_santalo",
        [](const NormBody& b, long samples, std::uint64_t seed,
           const std::optional<Eigen::MatrixXd>& subspace) {
          std::optional<Subspace> L;
          if (subspace) L = subspace_from(*subspace);
          return report_to_dict(check_santalo(b, L, samples, seed));
        },
        py::arg("body"), py::arg("samples") = 100000, py::arg("seed") = 1,
        py::arg("subspace") = std::nullopt);
  m.def("check_polar_containment",
        [](const NormBody& b, const Eigen::MatrixXd& basis, long samples, std::uint64_t seed) {
          return report_to_dict(check_polar_containment(b, subspace_from(basis), samples, seed));
        },
        py::arg("body"), py::arg("basis"), py::arg("samples") = 100000, py::arg("seed") = 1);
  m.def("check_central_section_max",
        [](const NormBody& b, const Eigen::MatrixXd& basis,
           const std::vector<Eigen::VectorXd>& offsets, long samples, std::uint64_t seed) {
          return report_to_dict(
              check_central_section_max(b, subspace_from(basis), offsets, samples, seed));
        },
        py::arg("body"), py::arg("basis"), py::arg("offsets"), py::arg("samples") = 100000,
        py::arg("seed") = 1);
  m.def("check_bourgain_milman",
        [](const NormBody& b, long samples, std::uint64_t seed, double c2) {
          return report_to_dict(check_bourgain_milman(b, samples, seed, c2));
        },
        py::arg("body"), py::arg("samples") = 100000, py::arg("seed") = 1,
        py::arg("c2") = 0.5);
  m.def("check_volume_lower_bound",
        [](const NormBody& b, long samples, std::uint64_t seed, double c1, double c2) {
          return report_to_dict(check_volume_lower_bound(b, samples, seed, c1, c2));
        },
        py::arg("body"), py::arg("samples") = 100000, py::arg("seed") = 1,
        py::arg("c1") = 1.0, py::arg("c2") = 0.5);

  m.def("omega",
        [](int n, int mm) {
          const OmegaValue v = omega(n, mm);
          return py::make_tuple(v.paper_value, v.corrected_value);
        },
        py::arg("n"), py::arg("m"));

  m.def("random_subspace",
        [](int n, int s, std::uint64_t seed) { return random_subspace(n, s, seed).basis; },
        py::arg("n"), py::arg("s"), py::arg("seed"));

  m.def("intersect_subspaces",
        [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
          return intersect_subspaces(subspace_from(a), subspace_from(b)).basis;
        },
        py::arg("a"), py::arg("b"));

  m.def("ratio_minimize",
        [](const SpectrumSelection& s, const Eigen::MatrixXd& basis, double p, double q,
           int restarts, int iterations, std::uint64_t seed) {
          return search_to_dict(
              ratio_minimize(s, subspace_from(basis), p, q, restarts, iterations, seed));
        },
        py::arg("spectrum"), py::arg("basis"), py::arg("p"), py::arg("q"),
        py::arg("restarts") = 16, py::arg("iterations") = 500, py::arg("seed") = 1);

  m.def("proof_pipeline",
        [](const SpectrumSelection& s, const Eigen::MatrixXd& basis, double p, double q,
           double lambda, long samples, std::uint64_t seed) {
          return search_to_dict(
              proof_pipeline(s, subspace_from(basis), p, q, lambda, samples, seed));
        },
        py::arg("spectrum"), py::arg("basis"), py::arg("p"), py::arg("q"),
        py::arg("lambda_"), py::arg("samples") = 2000, py::arg("seed") = 1);

  m.def("theorem3_experiment",
        [](const std::string& manifold, const std::vector<int>& n_list, double eps, double p,
           double q, int trials, std::uint64_t seed, int restarts, int iterations) {
          py::list rows;
          for (const Theorem3Row& r :
               theorem3_experiment(manifold_from_name(manifold), n_list, eps, p, q, trials,
                                   seed, restarts, iterations)) {
            py::dict d;
            d["n"] = r.n;
            d["worst_ratio"] = r.worst_ratio;
            d["rho"] = r.rho;
            d["normalized"] = r.normalized;
            d["trial_ratios"] = r.trial_ratios;
            rows.append(d);
          }
          return rows;
        },
        py::arg("manifold"), py::arg("n_list"), py::arg("eps"), py::arg("p"), py::arg("q"),
        py::arg("trials") = 8, py::arg("seed") = 1, py::arg("restarts") = 16,
        py::arg("iterations") = 500);

  m.def("random_sign_poly",
        [](int length, std::uint64_t seed) { return random_sign_poly(length, seed).signs; },
        py::arg("length"), py::arg("seed"));
  m.def("rudin_shapiro", [](int k) { return rudin_shapiro(k).signs; }, py::arg("k"));
  m.def("sign_poly_sup",
        [](const std::vector<int>& signs) { return sign_poly_sup(SignSequence{signs}); },
        py::arg("signs"));
  m.def("rudin_check",
        [](int length, int attempts, std::uint64_t seed) {
          const RudinCheck r = rudin_check(length, attempts, seed);
          py::dict d;
          d["best_sup"] = r.best_sup;
          d["passed"] = r.passed;
          return d;
        },
        py::arg("length"), py::arg("attempts") = 200, py::arg("seed") = 1);
  m.def("moment_check",
        [](int degree, int p, int trials, std::uint64_t seed, bool rademacher,
           double tolerance) {
          const MomentCheck r = moment_check(degree, p, trials, seed, rademacher, tolerance);
          py::dict d;
          d["ratio"] = r.ratio;
          d["target"] = r.target;
          d["passed"] = r.passed;
          return d;
        },
        py::arg("degree"), py::arg("p"), py::arg("trials") = 1000, py::arg("seed") = 1,
        py::arg("rademacher") = false, py::arg("tolerance") = 0.10);

  m.def("run_cli", &run_cli, py::arg("args"),
        "Run the batch experiment driver; returns the process exit code.");
}
