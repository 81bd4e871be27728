#include "asrga/trace.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "asrga/errors.hpp"
#include "asrga/matrix_io.hpp"

namespace asrga {

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& rows) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot open for writing: " + path);
  out << kTraceHeader << '\n';
  long prev_k = 0;
  bool first = true;
  for (const TraceRow& r : rows) {
    if (!first && r.k <= prev_k) throw ParameterError("trace rows must have strictly increasing k");
    first = false;
    prev_k = r.k;
    out << r.k << ',' << format_double(r.mu) << ',' << format_double(r.eta) << ','
        << format_double(r.step) << ',' << format_double(r.grad_norm) << ','
        << format_double(r.f_smooth) << ',' << format_double(r.f_true) << ',';
    if (r.metric) out << format_double(*r.metric);
    out << ',' << format_double(r.elapsed_s) << '\n';
  }
  if (!out) throw NumericError("write failed: " + path);
}

std::vector<TraceRow> read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader)
    throw ParameterError("bad trace header in " + path);
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    // A trailing empty metric cell still yields 9 cells because elapsed_s follows.
    if (cells.size() != 9) throw ParameterError("bad trace row in " + path + ": " + line);
    auto num = [&](const std::string& c) {
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (end == c.c_str()) throw ParameterError("bad trace cell '" + c + "' in " + path);
      return v;
    };
    TraceRow r;
    r.k = std::strtol(cells[0].c_str(), nullptr, 10);
    r.mu = num(cells[1]);
    r.eta = num(cells[2]);
    r.step = num(cells[3]);
    r.grad_norm = num(cells[4]);
    r.f_smooth = num(cells[5]);
    r.f_true = num(cells[6]);
    if (!cells[7].empty()) r.metric = num(cells[7]);
    r.elapsed_s = num(cells[8]);
    rows.push_back(r);
  }
  return rows;
}

void write_report(const std::string& path, const ReportEntries& entries) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot open for writing: " + path);
  for (const auto& [key, value] : entries) out << key << " = " << value << '\n';
  if (!out) throw NumericError("write failed: " + path);
}

}  // namespace asrga
