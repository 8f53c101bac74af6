#pragma once

#include <iosfwd>
#include <string>

#include "spgmo/solver.hpp"

namespace spgmo {

/// One JSON object per iteration record (JSON-lines), vectors as arrays of
/// doubles; "x" present only when points were stored, "gamma" only on
/// accelerated records.
void write_trace_jsonl(std::ostream& os, const SolveReport& report);
std::string trace_jsonl(const SolveReport& report);

/// Summary JSON: status, counters, final point and objective values.
std::string summary_json(const SolveReport& report, const std::string& problem,
                         const std::string& algorithm);

}  // namespace spgmo
