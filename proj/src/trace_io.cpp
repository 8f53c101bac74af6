#include "spgmo/trace_io.hpp"

#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace spgmo {

using nlohmann::json;

namespace {

json vec_to_json(const Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

json record_to_json(const IterationRecord& rec) {
  json j;
  j["k"] = rec.k;
  if (rec.x.size() > 0) j["x"] = vec_to_json(rec.x);
  j["F"] = vec_to_json(rec.F);
  j["residual"] = rec.residual;
  j["t"] = rec.t;
  j["alpha"] = vec_to_json(rec.alpha);
  j["lambda"] = vec_to_json(rec.lambda);
  if (rec.gamma) j["gamma"] = *rec.gamma;
  j["gap"] = rec.gap;
  j["fevals"] = rec.fevals;
  return j;
}

}  // namespace

void write_trace_jsonl(std::ostream& os, const SolveReport& report) {
  for (const auto& rec : report.trace) {
    os << record_to_json(rec).dump() << "\n";
  }
}

std::string trace_jsonl(const SolveReport& report) {
  std::ostringstream os;
  write_trace_jsonl(os, report);
  return os.str();
}

std::string summary_json(const SolveReport& report, const std::string& problem,
                         const std::string& algorithm) {
  json j;
  j["problem"] = problem;
  j["algorithm"] = algorithm;
  j["status"] = status_name(report.status);
  if (!report.error.empty()) j["error"] = report.error;
  j["iterations"] = report.iterations;
  j["fevals"] = report.fevals;
  j["gevals"] = report.gevals;
  j["wall_time_ms"] = report.wall_time_ms;
  j["final_x"] = vec_to_json(report.final_x);
  j["final_F"] = vec_to_json(report.final_F);
  j["final_residual"] = report.final_residual;
  return j.dump();
}

}  // namespace spgmo
