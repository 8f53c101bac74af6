#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spgmo/bench.hpp"
#include "spgmo/errors.hpp"
#include "spgmo/metrics.hpp"
#include "spgmo/problem.hpp"
#include "spgmo/solver.hpp"
#include "spgmo/trace_io.hpp"

namespace py = pybind11;
using namespace spgmo;

namespace {

SolverConfig make_config(const std::string& algo, double tol, int max_iter,
                         double sigma, const std::string& scaling, double ell,
                         double linear_alpha, py::object mu_hat,
                         bool store_points) {
  auto a = algorithm_from_name(algo);
  if (!a) throw ConfigError("unknown algorithm: " + algo);
  SolverConfig cfg;
  cfg.algorithm = *a;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  cfg.store_points = store_points;
  if (*a == Algorithm::kSPGMO_LS) {
    cfg.scaling = ScalingStrategy::barzilai_borwein();
    LineSearchParams ls;
    ls.sigma = sigma;
    cfg.line_search = ls;
  }
  if (!scaling.empty()) {
    if (scaling == "known-l") cfg.scaling = ScalingStrategy::known_l();
    else if (scaling == "known-mu") cfg.scaling = ScalingStrategy::known_mu();
    else if (scaling == "bb") cfg.scaling = ScalingStrategy::barzilai_borwein();
    else if (scaling == "constant") cfg.scaling = ScalingStrategy::constant(ell);
    else if (scaling == "per-class")
      cfg.scaling = ScalingStrategy::per_class(linear_alpha);
    else throw ConfigError("unknown scaling: " + scaling);
  }
  if (!mu_hat.is_none()) cfg.mu_hat_override = mu_hat.cast<double>();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Scaled proximal gradient methods for multiobjective composite "
            "optimization";

  py::register_exception<InvalidInputError>(m, "InvalidInputError",
                                            PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<ProblemInstance>(m, "Problem")
      .def_property_readonly("name",
                             [](const ProblemInstance& p) { return p.name; })
      .def_property_readonly("n", [](const ProblemInstance& p) { return p.n; })
      .def_property_readonly("m", [](const ProblemInstance& p) { return p.m; })
      .def("F", &ProblemInstance::F, py::arg("x"),
           "objective vector F_i(x) = f_i(x) + g(x)")
      .def("jacobian", &ProblemInstance::jacobian, py::arg("x"),
           "rows are the smooth gradients at x")
      .def("g", [](const ProblemInstance& p, const Vector& x) {
             return p.g.value(x);
           },
           py::arg("x"), "shared nonsmooth term at x")
      .def("prox",
           [](const ProblemInstance& p, double beta, const Vector& v) {
             return p.g.prox(beta, v);
           },
           py::arg("beta"), py::arg("v"))
      .def_property_readonly("mu",
           [](const ProblemInstance& p) -> py::object {
             if (!p.smoothness) return py::none();
             return py::cast(p.smoothness->mu);
           })
      .def_property_readonly("L",
           [](const ProblemInstance& p) -> py::object {
             if (!p.smoothness) return py::none();
             return py::cast(p.smoothness->L);
           })
      .def_property_readonly("box",
           [](const ProblemInstance& p) {
             return py::make_tuple(p.box_lo, p.box_hi);
           })
      .def("to_json", &problem_to_json, py::arg("include_matrices") = false)
      .def("__repr__", [](const ProblemInstance& p) {
        return "<spgmo.Problem '" + p.name + "' m=" + std::to_string(p.m) +
               " n=" + std::to_string(p.n) + ">";
      });

  py::class_<IterationRecord>(m, "IterationRecord")
      .def_readonly("k", &IterationRecord::k)
      .def_readonly("x", &IterationRecord::x)
      .def_readonly("F", &IterationRecord::F)
      .def_readonly("residual", &IterationRecord::residual)
      .def_readonly("t", &IterationRecord::t)
      .def_readonly("alpha", &IterationRecord::alpha)
      .def_readonly("lam", &IterationRecord::lambda)
      .def_property_readonly("gamma",
           [](const IterationRecord& r) -> py::object {
             if (!r.gamma) return py::none();
             return py::cast(*r.gamma);
           })
      .def_readonly("gap", &IterationRecord::gap);

  py::class_<SolveReport>(m, "SolveReport")
      .def_property_readonly("status",
           [](const SolveReport& r) { return std::string(status_name(r.status)); })
      .def_property_readonly("converged", &SolveReport::converged)
      .def_readonly("iterations", &SolveReport::iterations)
      .def_readonly("fevals", &SolveReport::fevals)
      .def_readonly("gevals", &SolveReport::gevals)
      .def_readonly("wall_time_ms", &SolveReport::wall_time_ms)
      .def_readonly("final_x", &SolveReport::final_x)
      .def_readonly("final_F", &SolveReport::final_F)
      .def_readonly("final_residual", &SolveReport::final_residual)
      .def_readonly("trace", &SolveReport::trace)
      .def("points", &SolveReport::points)
      .def("residuals",
           [](const SolveReport& r) {
             Vector res(static_cast<Index>(r.trace.size()));
             for (size_t i = 0; i < r.trace.size(); ++i) {
               res[static_cast<Index>(i)] = r.trace[i].residual;
             }
             return res;
           })
      .def("trace_jsonl", [](const SolveReport& r) { return trace_jsonl(r); })
      .def("__repr__", [](const SolveReport& r) {
        return std::string("<spgmo.SolveReport ") + status_name(r.status) +
               " iterations=" + std::to_string(r.iterations) + ">";
      });

  m.def("quadratic_family", &gen_quadratic_family, py::arg("n"), py::arg("m"),
        py::arg("kappa"), py::arg("zeta"), py::arg("with_l1") = false,
        py::arg("seed") = 0,
        "Random quadratic family with exact recorded smoothness constants");
  m.def("example_3_1", &example_3_1, py::arg("L"));
  m.def("example_4_4", &example_4_4, py::arg("c"));
  m.def("problem_from_json", &problem_from_json, py::arg("text"));

  m.def("solve",
        [](const ProblemInstance& p, const std::string& algo, const Vector& x0,
           double tol, int max_iter, double sigma, const std::string& scaling,
           double ell, double linear_alpha, py::object mu_hat,
           bool store_points) {
          SolverConfig cfg = make_config(algo, tol, max_iter, sigma, scaling,
                                         ell, linear_alpha, mu_hat,
                                         store_points);
          return run(p, cfg, x0);
        },
        py::arg("problem"), py::arg("algo"), py::arg("x0"),
        py::arg("tol") = 1e-4, py::arg("max_iter") = 500,
        py::arg("sigma") = 1e-4, py::arg("scaling") = std::string(),
        py::arg("ell") = 1.0, py::arg("linear_alpha") = 1e-6,
        py::arg("mu_hat") = py::none(), py::arg("store_points") = true,
        "Run pgmo | spgmo | spgmo-ls | apgmo | aspgmo | apgmo-sc | aspgmo-sc "
        "from x0");

  m.def("direction",
        [](const ProblemInstance& p, const Vector& x, const Vector& alpha,
           double ell) {
          auto sol = solve_direction(x, p.jacobian(x), p.g, alpha, ell, {});
          py::dict out;
          out["d"] = sol.d;
          out["lam"] = sol.lambda;
          out["primal_value"] = sol.primal_value;
          out["dual_value"] = sol.dual_value;
          out["gap"] = sol.gap;
          out["inner_iters"] = sol.inner_iters;
          return out;
        },
        py::arg("problem"), py::arg("x"), py::arg("alpha"), py::arg("ell") = 1.0,
        "Solve the direction subproblem at x, certified by its duality gap");

  m.def("merit_w",
        [](const ProblemInstance& p, const Vector& x, const Vector& alpha,
           double ell) { return merit_w(p, x, alpha, ell); },
        py::arg("problem"), py::arg("x"), py::arg("alpha"), py::arg("ell") = 1.0);

  m.def("scaled_gap",
        [](const ProblemInstance& p, const Vector& x, const Vector& z) {
          return scaled_gap(p, x, z);
        },
        py::arg("problem"), py::arg("x"), py::arg("z"));

  m.def("sample_starts",
        [](const ProblemInstance& p, int runs, std::uint64_t seed) {
          return sample_starts(p, runs, seed);
        },
        py::arg("problem"), py::arg("runs"), py::arg("seed") = 0);
}
