// Benchmark CLI: single solves with trace export, batched sweeps with
// CSV/markdown reports, and value-space scatter exports.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spgmo/bench.hpp"
#include "spgmo/errors.hpp"
#include "spgmo/rng.hpp"
#include "spgmo/solver.hpp"
#include "spgmo/trace_io.hpp"

namespace {

using namespace spgmo;

constexpr int kExitOk = 0;
constexpr int kExitBadConfig = 2;
constexpr int kExitNotConverged = 3;

struct ProblemFlags {
  std::string problem;
  double L = 1e3;     // example_3_1
  double c = 1e-2;    // example_4_4
  int n = 10;         // quadratic family
  int m = 2;
  double kappa = 10.0;
  double zeta = 1.0;
  bool with_l1 = false;
  std::uint64_t problem_seed = 0;
};

void add_problem_flags(CLI::App* cmd, ProblemFlags& pf) {
  cmd->add_option("--problem", pf.problem,
                  "example31 | example44 | qp | path to a problem JSON file")
      ->required();
  cmd->add_option("--L", pf.L, "curvature of the second objective (example31)");
  cmd->add_option("--c", pf.c, "linear slope (example44)");
  cmd->add_option("--n", pf.n, "dimension (qp)");
  cmd->add_option("--m", pf.m, "objective count (qp)");
  cmd->add_option("--kappa", pf.kappa, "per-objective condition number (qp)");
  cmd->add_option("--zeta", pf.zeta, "objective imbalance parameter (qp)");
  cmd->add_flag("--l1", pf.with_l1, "add the weighted l1 term (qp)");
  cmd->add_option("--problem-seed", pf.problem_seed, "generator seed (qp)");
}

ProblemInstance build_problem(const ProblemFlags& pf) {
  if (pf.problem.size() > 5 &&
      pf.problem.substr(pf.problem.size() - 5) == ".json") {
    std::ifstream in(pf.problem);
    if (!in) throw ConfigError("cannot open problem file: " + pf.problem);
    std::stringstream ss;
    ss << in.rdbuf();
    return problem_from_json(ss.str());
  }
  if (pf.problem == "example31" || pf.problem == "example_3_1") {
    return example_3_1(pf.L);
  }
  if (pf.problem == "example44" || pf.problem == "example_4_4") {
    return example_4_4(pf.c);
  }
  if (pf.problem == "qp" || pf.problem == "quadratic_family") {
    return gen_quadratic_family(pf.n, pf.m, pf.kappa, pf.zeta, pf.with_l1,
                                pf.problem_seed);
  }
  throw ConfigError("unknown problem: " + pf.problem);
}

Vector parse_x0(const std::string& text, Index n) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    vals.push_back(std::stod(tok));
  }
  if (static_cast<Index>(vals.size()) != n) {
    throw ConfigError("--x0 has wrong dimension");
  }
  return Eigen::Map<Vector>(vals.data(), static_cast<Index>(vals.size()));
}

ScalingStrategy parse_scaling(const std::string& name, double ell,
                              double linear_alpha) {
  if (name == "known-l") return ScalingStrategy::known_l();
  if (name == "known-mu") return ScalingStrategy::known_mu();
  if (name == "bb") return ScalingStrategy::barzilai_borwein();
  if (name == "constant") return ScalingStrategy::constant(ell);
  if (name == "per-class") return ScalingStrategy::per_class(linear_alpha);
  throw ConfigError("unknown scaling: " + name);
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << text;
}

int cmd_solve(const ProblemFlags& pf, const std::string& algo,
              const std::string& x0_text, std::uint64_t seed, double tol,
              int max_iter, double sigma, const std::string& scaling,
              double ell, double linear_alpha, double mu_hat,
              const std::string& trace_path, bool strict) {
  ProblemInstance p = build_problem(pf);
  AlgoSpec spec = algo_spec_from_name(algo);
  spec.config.tol = tol;
  spec.config.max_iter = max_iter;
  if (!scaling.empty()) {
    spec.config.scaling = parse_scaling(scaling, ell, linear_alpha);
  }
  if (spec.config.line_search || sigma != 1e-4) {
    LineSearchParams ls = spec.config.line_search.value_or(LineSearchParams{});
    ls.sigma = sigma;
    spec.config.line_search = ls;
  }
  if (mu_hat > 0.0) spec.config.mu_hat_override = mu_hat;

  Vector x0 = x0_text.empty() ? sample_starts(p, 1, seed)[0]
                              : parse_x0(x0_text, p.n);
  SolveReport rep = run(p, spec.config, x0);

  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    if (!out) throw ConfigError("cannot open trace file: " + trace_path);
    write_trace_jsonl(out, rep);
  }
  std::cout << summary_json(rep, p.name, spec.name) << "\n";
  if (rep.status == SolveStatus::kError) return 1;
  if (strict && rep.status == SolveStatus::kMaxIterations) {
    return kExitNotConverged;
  }
  return kExitOk;
}

int cmd_bench(const std::string& config_path, const std::string& out_path,
              const std::string& format, const std::string& md_path,
              int threads, bool verbose) {
  std::ifstream in(config_path);
  if (!in) throw ConfigError("cannot open config file: " + config_path);
  std::stringstream ss;
  ss << in.rdbuf();
  BenchConfig cfg = bench_config_from_json(ss.str());
  cfg.threads = threads;
  cfg.verbose = verbose;
  BenchResult result = run_bench(cfg);
  std::string text;
  if (format == "csv") {
    text = bench_rows_to_csv(result.rows);
  } else if (format == "md") {
    text = bench_rows_to_markdown(result.rows);
  } else if (format == "json") {
    text = bench_rows_to_json(result.rows);
  } else {
    throw ConfigError("unknown format: " + format);
  }
  write_out(out_path, text);
  if (!md_path.empty()) {
    write_out(md_path, bench_rows_to_markdown(result.rows));
  }
  return kExitOk;
}

int cmd_front(const ProblemFlags& pf, const std::string& algos_text,
              const std::string& kmax_text, int runs, std::uint64_t seed,
              double tol, const std::string& out_path, int threads) {
  ProblemInstance p = build_problem(pf);
  std::vector<AlgoSpec> algos;
  {
    std::stringstream ss(algos_text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) algos.push_back(algo_spec_from_name(tok));
    }
  }
  if (algos.empty()) throw ConfigError("--algos must name at least one method");
  std::vector<int> kmax_list;
  {
    std::stringstream ss(kmax_text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      const int k = std::stoi(tok);
      if (k < 0) throw ConfigError("--max-iter entries must be >= 0");
      kmax_list.push_back(k);
    }
  }
  if (kmax_list.empty()) throw ConfigError("--max-iter must list budgets");
  if (runs < 1) throw ConfigError("--runs must be >= 1");
  auto rows = run_front(p, algos, kmax_list, runs, seed, tol, threads);
  write_out(out_path, front_rows_to_csv(rows, p.m));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scaled proximal gradient methods for multiobjective "
               "composite optimization"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "run one solve, print summary JSON");
  ProblemFlags spf;
  add_problem_flags(solve, spf);
  std::string algo = "spgmo";
  std::string x0_text, scaling_name, trace_path;
  std::uint64_t seed = 0;
  double tol = 1e-4, sigma = 1e-4, ell = 1.0, linear_alpha = 1e-6,
         mu_hat = 0.0;
  int max_iter = 500;
  bool strict = false;
  solve->add_option("--algo", algo, "pgmo|spgmo|spgmo-ls|apgmo|aspgmo|apgmo-sc|aspgmo-sc");
  solve->add_option("--x0", x0_text, "comma-separated start point");
  solve->add_option("--seed", seed, "seed for start sampling when --x0 absent");
  solve->add_option("--tol", tol, "stopping tolerance on the residual");
  solve->add_option("--max-iter", max_iter, "iteration cap");
  solve->add_option("--sigma", sigma, "Armijo sufficient-decrease fraction");
  solve->add_option("--scaling", scaling_name,
                    "known-l|known-mu|bb|constant|per-class");
  solve->add_option("--ell", ell, "constant scaling value");
  solve->add_option("--linear-alpha", linear_alpha,
                    "per-class scaling for linear objectives");
  solve->add_option("--mu-hat", mu_hat, "override for the sc momentum");
  solve->add_option("--trace", trace_path, "write a JSON-lines trace here");
  solve->add_flag("--strict", strict, "exit 3 when the cap is hit");

  // bench
  auto* bench = app.add_subcommand("bench", "run a batched sweep from a config");
  std::string config_path, out_path, format = "csv", md_path;
  int threads = 0;
  bool verbose = false;
  bench->add_option("config", config_path, "bench config JSON")->required();
  bench->add_option("--out", out_path, "output path (stdout when absent)");
  bench->add_option("--format", format, "csv|md|json");
  bench->add_option("--md", md_path, "also write a markdown table here");
  bench->add_option("--threads", threads, "worker pool size (0 = auto)");
  bench->add_flag("--verbose", verbose, "echo per-run start hashes to stderr");

  // front
  auto* front = app.add_subcommand(
      "front", "final objective vectors per start and iteration budget");
  ProblemFlags fpf;
  add_problem_flags(front, fpf);
  std::string algos_text = "spgmo";
  std::string kmax_text = "500";
  std::string front_out;
  int runs = 50;
  std::uint64_t fseed = 0;
  double ftol = 1e-4;
  int fthreads = 0;
  front->add_option("--algos", algos_text, "comma-separated algorithm list");
  front->add_option("--max-iter", kmax_text, "comma-separated budgets");
  front->add_option("--runs", runs, "number of sampled starts");
  front->add_option("--seed", fseed, "start sampling seed");
  front->add_option("--tol", ftol, "stopping tolerance");
  front->add_option("--out", front_out, "output path (stdout when absent)");
  front->add_option("--threads", fthreads, "worker pool size (0 = auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadConfig;
  }

  try {
    if (solve->parsed()) {
      return cmd_solve(spf, algo, x0_text, seed, tol, max_iter, sigma,
                       scaling_name, ell, linear_alpha, mu_hat, trace_path,
                       strict);
    }
    if (bench->parsed()) {
      return cmd_bench(config_path, out_path, format, md_path, threads,
                       verbose);
    }
    if (front->parsed()) {
      return cmd_front(fpf, algos_text, kmax_text, runs, fseed, ftol,
                       front_out, fthreads);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const InvalidInputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitBadConfig;
}
