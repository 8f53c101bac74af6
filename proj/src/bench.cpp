#include "spgmo/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "spgmo/errors.hpp"
#include "spgmo/rng.hpp"

namespace spgmo {

using nlohmann::json;

AlgoSpec algo_spec_from_name(const std::string& name) {
  auto algo = algorithm_from_name(name);
  if (!algo) throw ConfigError("unknown algorithm: " + name);
  AlgoSpec spec;
  spec.name = algorithm_name(*algo);
  spec.config.algorithm = *algo;
  if (*algo == Algorithm::kSPGMO_LS) {
    spec.config.scaling = ScalingStrategy::barzilai_borwein();
    spec.config.line_search = LineSearchParams{};
  }
  return spec;
}

namespace {

ProblemDesc problem_desc_from_json(const json& j) {
  ProblemDesc d;
  d.kind = j.at("kind").get<std::string>();
  if (d.kind == "quadratic_family") {
    d.n = j.at("n").get<Index>();
    d.m = j.value("m", 2);
    d.kappa = j.at("kappa").get<double>();
    d.zeta = j.value("zeta", 1.0);
    d.with_l1 = j.value("with_l1", false);
    d.seed = j.value("seed", std::uint64_t{0});
  } else if (d.kind == "example_3_1") {
    d.L = j.value("L", 1e3);
  } else if (d.kind == "example_4_4") {
    d.c = j.value("c", 1e-2);
  } else {
    throw ConfigError("unknown problem kind: " + d.kind);
  }
  return d;
}

ScalingStrategy scaling_from_json(const json& j) {
  const std::string kind = j.value("scaling", "known-l");
  if (kind == "known-l") return ScalingStrategy::known_l();
  if (kind == "known-mu") return ScalingStrategy::known_mu();
  if (kind == "bb") {
    return ScalingStrategy::barzilai_borwein(j.value("bb_lo", 1e-8),
                                             j.value("bb_hi", 1e12),
                                             j.value("bb_init", 1.0));
  }
  if (kind == "constant") {
    return ScalingStrategy::constant(j.value("ell", 1.0));
  }
  if (kind == "per-class") {
    const std::string base = j.value("base", "known-l");
    ScalingStrategy::Kind bk;
    if (base == "known-l") bk = ScalingStrategy::Kind::kKnownL;
    else if (base == "known-mu") bk = ScalingStrategy::Kind::kKnownMu;
    else if (base == "bb") bk = ScalingStrategy::Kind::kBarzilaiBorwein;
    else if (base == "constant") bk = ScalingStrategy::Kind::kConstant;
    else throw ConfigError("unknown per-class base: " + base);
    ScalingStrategy s =
        ScalingStrategy::per_class(j.value("linear_alpha", 1e-6), bk);
    s.ell = j.value("ell", 1.0);
    return s;
  }
  throw ConfigError("unknown scaling: " + kind);
}

}  // namespace

BenchConfig bench_config_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bench config: ") + e.what());
  }
  BenchConfig cfg;
  if (!j.contains("problems") || !j["problems"].is_array() ||
      j["problems"].empty()) {
    throw ConfigError("bench config: problems[] required");
  }
  for (const auto& pj : j["problems"]) {
    cfg.problems.push_back(problem_desc_from_json(pj));
  }
  if (!j.contains("algorithms") || !j["algorithms"].is_array() ||
      j["algorithms"].empty()) {
    throw ConfigError("bench config: algorithms[] required");
  }
  cfg.runs = j.value("runs", 1);
  if (cfg.runs < 1) throw ConfigError("bench config: runs must be >= 1");
  cfg.seed = j.value("seed", std::uint64_t{0});
  cfg.shared_starts = j.value("shared_starts", true);
  cfg.tol = j.value("tol", 1e-4);
  cfg.max_iter = j.value("max_iter", 500);
  for (const auto& aj : j["algorithms"]) {
    AlgoSpec spec;
    if (aj.is_string()) {
      spec = algo_spec_from_name(aj.get<std::string>());
    } else {
      spec = algo_spec_from_name(aj.at("name").get<std::string>());
      if (aj.contains("scaling")) spec.config.scaling = scaling_from_json(aj);
      if (aj.contains("sigma")) {
        LineSearchParams ls = spec.config.line_search.value_or(LineSearchParams{});
        ls.sigma = aj["sigma"].get<double>();
        spec.config.line_search = ls;
      }
      if (aj.contains("mu_hat")) {
        spec.config.mu_hat_override = aj["mu_hat"].get<double>();
      }
      if (aj.contains("label")) spec.name = aj["label"].get<std::string>();
    }
    spec.config.tol = cfg.tol;
    spec.config.max_iter = cfg.max_iter;
    cfg.algorithms.push_back(std::move(spec));
  }
  return cfg;
}

std::vector<Vector> sample_starts(const ProblemInstance& p, int runs,
                                  std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vector> starts;
  starts.reserve(static_cast<size_t>(runs));
  for (int r = 0; r < runs; ++r) {
    starts.push_back(rng.uniform_vector(p.box_lo, p.box_hi));
  }
  return starts;
}

namespace {

/// Bounded worker pool over a task list; results land in pre-sized slots so
/// ordering never depends on scheduling.
void parallel_for(int n_tasks, int threads,
                  const std::function<void(int)>& fn) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  int nt = threads > 0 ? threads : hw;
  nt = std::min(nt, n_tasks);
  if (nt <= 1) {
    for (int i = 0; i < n_tasks; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(nt));
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n_tasks; i = next.fetch_add(1)) {
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

struct RunOutcome {
  bool converged = false;
  int iterations = 0;
  long fevals = 0;
  double time_ms = 0.0;
};

std::uint64_t fnv1a_hash(const Vector& v) {
  std::uint64_t h = 1469598103934665603ULL;
  for (Index i = 0; i < v.size(); ++i) {
    const double d = v[i];
    const unsigned char* bytes = reinterpret_cast<const unsigned char*>(&d);
    for (size_t b = 0; b < sizeof(double); ++b) {
      h ^= bytes[b];
      h *= 1099511628211ULL;
    }
  }
  return h;
}

}  // namespace

BenchResult run_bench(const BenchConfig& cfg) {
  BenchResult result;
  for (size_t pi = 0; pi < cfg.problems.size(); ++pi) {
    ProblemInstance p = make_problem(cfg.problems[pi]);
    std::vector<std::vector<Vector>> starts_per_algo;
    if (cfg.shared_starts) {
      auto starts = sample_starts(p, cfg.runs, mix_seed(cfg.seed, pi));
      starts_per_algo.assign(cfg.algorithms.size(), starts);
    } else {
      for (size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
        starts_per_algo.push_back(
            sample_starts(p, cfg.runs, mix_seed(cfg.seed, pi, ai + 1)));
      }
    }

    result.run_iters.emplace_back();
    for (size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
      const AlgoSpec& spec = cfg.algorithms[ai];
      SolverConfig sc = spec.config;
      sc.tol = cfg.tol;
      sc.max_iter = cfg.max_iter;
      sc.store_points = false;
      sc.store_trace = false;

      std::vector<RunOutcome> outcomes(static_cast<size_t>(cfg.runs));
      const auto& starts = starts_per_algo[ai];
      parallel_for(cfg.runs, cfg.threads, [&](int r) {
        SolveReport rep = run(p, sc, starts[static_cast<size_t>(r)]);
        RunOutcome& o = outcomes[static_cast<size_t>(r)];
        o.converged = rep.converged();
        o.iterations = rep.iterations;
        o.fevals = rep.fevals;
        o.time_ms = rep.wall_time_ms;
      });

      if (cfg.verbose) {
        for (int r = 0; r < cfg.runs; ++r) {
          std::fprintf(stderr, "# %s %s run=%d x0_hash=%016llx\n",
                       p.name.c_str(), spec.name.c_str(), r,
                       static_cast<unsigned long long>(
                           fnv1a_hash(starts[static_cast<size_t>(r)])));
        }
      }

      BenchRow row;
      row.problem = p.name;
      row.algorithm = spec.name;
      row.runs = cfg.runs;
      std::vector<int> iters;
      for (const auto& o : outcomes) {
        iters.push_back(o.converged ? o.iterations : -1);
        if (!o.converged) continue;
        ++row.converged;
        row.mean_iter += o.iterations;
        row.mean_feval += static_cast<double>(o.fevals);
        row.mean_time_ms += o.time_ms;
      }
      if (row.converged > 0) {
        row.mean_iter /= row.converged;
        row.mean_feval /= row.converged;
        row.mean_time_ms /= row.converged;
      }
      row.success_rate = static_cast<double>(row.converged) / cfg.runs;
      result.rows.push_back(row);
      result.run_iters.back().push_back(std::move(iters));
    }
  }
  return result;
}

namespace {

std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string bench_rows_to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "problem,algorithm,runs,mean_iter,mean_feval,mean_time_ms,success_rate\n";
  for (const auto& r : rows) {
    os << r.problem << ',' << r.algorithm << ',' << r.runs << ',';
    if (r.converged == 0) {
      os << "--,--,--,";
    } else {
      os << fmt2(r.mean_iter) << ',' << fmt2(r.mean_feval) << ','
         << fmt2(r.mean_time_ms) << ',';
    }
    os << fmt2(r.success_rate) << "\n";
  }
  return os.str();
}

std::string bench_rows_to_markdown(const std::vector<BenchRow>& rows) {
  // Table-4-style layout: one row per problem, iter/feval/time per algorithm,
  // "--" for cells where no run met the stopping criteria.
  std::vector<std::string> problems, algos;
  for (const auto& r : rows) {
    if (std::find(problems.begin(), problems.end(), r.problem) ==
        problems.end()) {
      problems.push_back(r.problem);
    }
    if (std::find(algos.begin(), algos.end(), r.algorithm) == algos.end()) {
      algos.push_back(r.algorithm);
    }
  }
  auto find_row = [&](const std::string& p,
                      const std::string& a) -> const BenchRow* {
    for (const auto& r : rows) {
      if (r.problem == p && r.algorithm == a) return &r;
    }
    return nullptr;
  };
  std::ostringstream os;
  os << "| Problem |";
  for (const auto& a : algos) os << ' ' << a << " iter | " << a << " feval | "
                                 << a << " time (ms) |";
  os << "\n|---|";
  for (size_t i = 0; i < algos.size(); ++i) os << "---|---|---|";
  os << "\n";
  for (const auto& pname : problems) {
    os << "| " << pname << " |";
    for (const auto& a : algos) {
      const BenchRow* r = find_row(pname, a);
      if (r == nullptr) {
        os << " | | |";
        continue;
      }
      if (r->converged == 0) {
        os << " -- | -- | -- |";
      } else {
        auto cell = [&](double v) {
          std::string s = fmt2(v);
          if (r->success_rate < 1.0) {
            s += " (sr=" + fmt2(r->success_rate) + ")";
          }
          return s;
        };
        os << ' ' << cell(r->mean_iter) << " | " << cell(r->mean_feval)
           << " | " << fmt2(r->mean_time_ms) << " |";
      }
    }
    os << "\n";
  }
  return os.str();
}

std::string bench_rows_to_json(const std::vector<BenchRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json j;
    j["problem"] = r.problem;
    j["algorithm"] = r.algorithm;
    j["runs"] = r.runs;
    j["converged"] = r.converged;
    if (r.converged > 0) {
      j["mean_iter"] = r.mean_iter;
      j["mean_feval"] = r.mean_feval;
      j["mean_time_ms"] = r.mean_time_ms;
    }
    j["success_rate"] = r.success_rate;
    arr.push_back(j);
  }
  return arr.dump(2);
}

std::vector<FrontRow> run_front(const ProblemInstance& p,
                                const std::vector<AlgoSpec>& algos,
                                const std::vector<int>& kmax_list, int runs,
                                std::uint64_t seed, double tol, int threads) {
  auto starts = sample_starts(p, runs, seed);
  struct Task {
    size_t ai;
    size_t ki;
    int run;
  };
  std::vector<Task> tasks;
  for (size_t ai = 0; ai < algos.size(); ++ai) {
    for (size_t ki = 0; ki < kmax_list.size(); ++ki) {
      for (int r = 0; r < runs; ++r) tasks.push_back({ai, ki, r});
    }
  }
  std::vector<FrontRow> rows(tasks.size());
  parallel_for(static_cast<int>(tasks.size()), threads, [&](int i) {
    const Task& t = tasks[static_cast<size_t>(i)];
    SolverConfig sc = algos[t.ai].config;
    sc.tol = tol;
    sc.max_iter = kmax_list[t.ki];
    sc.store_points = false;
    sc.store_trace = false;
    SolveReport rep = run(p, sc, starts[static_cast<size_t>(t.run)]);
    FrontRow& row = rows[static_cast<size_t>(i)];
    row.algorithm = algos[t.ai].name;
    row.kmax = kmax_list[t.ki];
    row.run = t.run;
    row.F = rep.final_F;
  });
  return rows;
}

std::string front_rows_to_csv(const std::vector<FrontRow>& rows, Index m) {
  std::ostringstream os;
  os << "algo,kmax,run";
  for (Index i = 1; i <= m; ++i) os << ",F" << i;
  os << "\n";
  for (const auto& r : rows) {
    os << r.algorithm << ',' << r.kmax << ',' << r.run;
    char buf[64];
    for (Index i = 0; i < r.F.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.12g", r.F[i]);
      os << ',' << buf;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace spgmo
