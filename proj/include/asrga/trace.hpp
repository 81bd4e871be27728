#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace asrga {

// One solver iteration. metric is problem-specific recovery error and may be
// absent; the CSV cell is then empty.
struct TraceRow {
  long k = 0;
  double mu = 0.0;
  double eta = 0.0;
  double step = 0.0;
  double grad_norm = 0.0;
  double f_smooth = 0.0;
  double f_true = 0.0;
  std::optional<double> metric;
  double elapsed_s = 0.0;
};

inline constexpr const char* kTraceHeader = "k,mu,eta,step,grad_norm,f_smooth,f_true,metric,elapsed_s";

// CSV with the fixed header above, 17-significant-digit values; write/read
// round-trips field-for-field.
void write_trace_csv(const std::string& path, const std::vector<TraceRow>& rows);
std::vector<TraceRow> read_trace_csv(const std::string& path);

// RunReport: ordered "key = value" lines.
using ReportEntries = std::vector<std::pair<std::string, std::string>>;
void write_report(const std::string& path, const ReportEntries& entries);

}  // namespace asrga
