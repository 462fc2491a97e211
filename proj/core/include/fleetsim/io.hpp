#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fleetsim/engine.hpp"
#include "fleetsim/evaluation.hpp"

namespace fleetsim {

// Shortest round-trip decimal rendering (std::to_chars); parsing the result
// with from_chars recovers the exact double, which is what makes run
// outputs byte-stable and exactly re-aggregatable.
std::string format_double(double v);
double parse_double(const std::string& s);

// Splits one CSV line; no quoting, fields in this project never contain
// commas.
std::vector<std::string> split_csv_line(const std::string& line);

// Writes orders.csv, attempts.csv, models.csv, accuracy.csv and summary.txt
// into dir (created if needed).
void write_run_result(const std::filesystem::path& dir, const RunResult& result,
                      const MetricsSummary& metrics);

void write_soh_grid(const std::filesystem::path& file,
                    const std::vector<GridCell>& grid);

struct OrderRow {
  long order_id;
  double arrival_time_s;
  double mass_kg;
  double distance_m;
  bool delivered;
  double delivered_time_s;  // meaningful iff delivered
  int attempt_count;
  std::string final_status;
};

std::vector<OrderRow> read_orders_csv(const std::filesystem::path& file);

struct AccuracyRow {
  int week;
  int uav_id;
  double accuracy;
};

std::vector<AccuracyRow> read_accuracy_csv(const std::filesystem::path& file);

// key: value pairs from summary.txt (metrics section only).
std::vector<std::pair<std::string, std::string>> read_summary(
    const std::filesystem::path& file);

}  // namespace fleetsim
