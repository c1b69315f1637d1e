#include "opsim/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <tuple>

#include "opsim/text.hpp"

namespace opsim {

std::vector<RunsCsvRow> result_rows(const ScanResult& result) {
  std::vector<RunsCsvRow> rows;
  for (const CellResult& cell : result.cells) {
    for (const SampleAggregate& agg : cell.samples) {
      RunsCsvRow row;
      row.fa = cell.fa;
      row.nd = cell.nd;
      row.adjust_error = cell.adjust_error;
      row.cutoff = cell.cutoff_time;
      row.sample_id = agg.sample_id;
      row.pq = agg.pq;
      row.mean_events = agg.events.mean();
      row.std_events = agg.events.count() < 2 ? 0.0 : agg.events.stddev();
      row.mean_ticks = agg.ticks.mean();
      row.mean_final_se = agg.mean_final_se();
      row.frac_reached_te =
          agg.count == 0 ? 0.0
                         : static_cast<double>(agg.reached_te) / static_cast<double>(agg.count);
      row.replications = agg.count;
      rows.push_back(std::move(row));
    }
  }
  std::sort(rows.begin(), rows.end(), [](const RunsCsvRow& a, const RunsCsvRow& b) {
    return std::tie(a.fa, a.nd, a.adjust_error, a.cutoff) <
               std::tie(b.fa, b.nd, b.adjust_error, b.cutoff) ||
           (std::tie(a.fa, a.nd, a.adjust_error, a.cutoff) ==
                std::tie(b.fa, b.nd, b.adjust_error, b.cutoff) &&
            a.pq > b.pq);
  });
  return rows;
}

std::string runs_csv(const ScanResult& result) {
  std::string out{kRunsCsvHeader};
  out += "\n";
  for (const RunsCsvRow& row : result_rows(result)) {
    out += format_double(row.fa);
    out += ",";
    out += std::to_string(row.nd);
    out += ",";
    out += row.adjust_error ? "true" : "false";
    out += ",";
    out += row.cutoff ? "true" : "false";
    out += ",";
    out += row.sample_id;
    out += ",";
    out += format_double(row.pq);
    out += ",";
    out += format_double(row.mean_events);
    out += ",";
    out += format_double(row.std_events);
    out += ",";
    out += format_double(row.mean_ticks);
    out += ",";
    out += format_double(row.mean_final_se);
    out += ",";
    out += format_double(row.frac_reached_te);
    out += ",";
    out += std::to_string(row.replications);
    out += "\n";
  }
  return out;
}

std::string summary_csv(const ScanResult& result) {
  std::string out =
      "fa,nd,adjust_error,cutoff,samples,total_mean_events,total_mean_ticks,"
      "mean_samples_with_data,frac_all_reached_te,replications\n";

  std::vector<const CellResult*> cells;
  for (const CellResult& cell : result.cells) cells.push_back(&cell);
  std::sort(cells.begin(), cells.end(), [](const CellResult* a, const CellResult* b) {
    return std::tie(a->fa, a->nd, a->adjust_error, a->cutoff_time) <
           std::tie(b->fa, b->nd, b->adjust_error, b->cutoff_time);
  });

  for (const CellResult* cell : cells) {
    double total_events = 0.0, total_ticks = 0.0;
    for (const SampleAggregate& agg : cell->samples) {
      total_events += agg.events.mean();
      total_ticks += agg.ticks.mean();
    }
    out += format_double(cell->fa);
    out += ",";
    out += std::to_string(cell->nd);
    out += ",";
    out += cell->adjust_error ? "true" : "false";
    out += ",";
    out += cell->cutoff_time ? "true" : "false";
    out += ",";
    out += std::to_string(cell->samples.size());
    out += ",";
    out += format_double(total_events);
    out += ",";
    out += format_double(total_ticks);
    out += ",";
    out += format_double(cell->samples_with_data.mean());
    out += ",";
    out += format_double(cell->replications == 0
                             ? 0.0
                             : static_cast<double>(cell->all_reached_te) /
                                   static_cast<double>(cell->replications));
    out += ",";
    out += std::to_string(cell->replications);
    out += "\n";
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (start <= line.size()) {
    const std::size_t comma = line.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? line.size() : comma;
    fields.emplace_back(trim(line.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

double to_double(const std::string& token, int line) {
  if (token == "inf") return std::numeric_limits<double>::infinity();
  if (token == "-inf") return -std::numeric_limits<double>::infinity();
  if (token == "nan") return std::numeric_limits<double>::quiet_NaN();
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size()) {
    throw IoError("runs csv: bad number at line " + std::to_string(line));
  }
  return v;
}

bool to_bool(const std::string& token, int line) {
  if (token == "true") return true;
  if (token == "false") return false;
  throw IoError("runs csv: bad boolean at line " + std::to_string(line));
}

}  // namespace

std::vector<RunsCsvRow> parse_runs_csv(std::string_view text) {
  std::vector<RunsCsvRow> rows;
  int line_no = 0;
  std::size_t pos = 0;
  bool saw_header = false;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    line = trim(line);
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != kRunsCsvHeader) throw IoError("runs csv: unrecognized header");
      saw_header = true;
      continue;
    }
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 12) {
      throw IoError("runs csv: expected 12 fields at line " + std::to_string(line_no));
    }
    RunsCsvRow row;
    row.fa = to_double(f[0], line_no);
    row.nd = static_cast<int>(to_double(f[1], line_no));
    row.adjust_error = to_bool(f[2], line_no);
    row.cutoff = to_bool(f[3], line_no);
    row.sample_id = f[4];
    row.pq = to_double(f[5], line_no);
    row.mean_events = to_double(f[6], line_no);
    row.std_events = to_double(f[7], line_no);
    row.mean_ticks = to_double(f[8], line_no);
    row.mean_final_se = to_double(f[9], line_no);
    row.frac_reached_te = to_double(f[10], line_no);
    row.replications = static_cast<std::uint64_t>(to_double(f[11], line_no));
    rows.push_back(std::move(row));
  }
  if (!saw_header) throw IoError("runs csv: empty document");
  return rows;
}

}  // namespace opsim
