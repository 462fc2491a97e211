#include "fleetsim/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "fleetsim/config.hpp"

namespace fleetsim {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc())
    throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error("parse_double: bad input '" + s + "'");
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

namespace {

std::ofstream open_out(const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);  // \n on every platform
  if (!out) throw std::runtime_error("cannot write " + file.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  return in;
}

void write_orders(const std::filesystem::path& file, const RunResult& r) {
  auto out = open_out(file);
  out << "order_id,arrival_time_s,mass_kg,distance_m,delivered_time_s,"
         "attempt_count,final_status\n";
  for (const Order& o : r.orders) {
    out << o.order_id << "," << format_double(o.arrival_time_s) << ","
        << format_double(o.mass_kg) << "," << format_double(o.distance_m)
        << ",";
    if (o.delivered_time_s) out << format_double(*o.delivered_time_s);
    out << "," << o.attempt_count << "," << to_string(o.status) << "\n";
  }
}

void write_attempts(const std::filesystem::path& file, const RunResult& r) {
  auto out = open_out(file);
  out << "depart_time_s,uav_id,task_id,soc_takeoff,distance_m,mass_kg,"
         "outcome,dest_arrival_time_s,fc_return_time_s\n";
  for (const AttemptRecord& a : r.attempts) {
    out << format_double(a.depart_time_s) << "," << a.uav_id << ","
        << a.task_id << "," << format_double(a.soc_takeoff) << ","
        << format_double(a.distance_m) << "," << format_double(a.mass_kg)
        << "," << to_string(a.outcome) << ",";
    if (a.dest_arrival_time_s) out << format_double(*a.dest_arrival_time_s);
    out << ",";
    if (a.fc_return_time_s) out << format_double(*a.fc_return_time_s);
    out << "\n";
  }
}

void write_models(const std::filesystem::path& file, const RunResult& r) {
  auto out = open_out(file);
  out << "week,uav_id,w_distance,w_mass,w_soc,b,step_count\n";
  for (const ModelSnapshot& s : r.snapshots) {
    out << s.week << "," << s.uav_id << "," << format_double(s.w[0]) << ","
        << format_double(s.w[1]) << "," << format_double(s.w[2]) << ","
        << format_double(s.b) << "," << s.step_count << "\n";
  }
  // Final state of every surviving model, tagged week 0 by convention.
  for (const UavRecord& u : r.uavs) {
    if (!u.final_model) continue;
    const BidModel& m = *u.final_model;
    out << "0," << u.uav_id << "," << format_double(m.w[0]) << ","
        << format_double(m.w[1]) << "," << format_double(m.w[2]) << ","
        << format_double(m.b) << "," << m.step_count << "\n";
  }
}

void write_accuracy(const std::filesystem::path& file,
                    const MetricsSummary& m) {
  auto out = open_out(file);
  out << "week,uav_id,accuracy\n";
  for (std::size_t week = 0; week < m.weekly_accuracy.size(); ++week) {
    const auto& row = m.weekly_accuracy[week];
    for (std::size_t uav = 0; uav < row.size(); ++uav)
      out << (week + 1) << "," << uav << "," << format_double(row[uav])
          << "\n";
  }
}

void write_summary(const std::filesystem::path& file, const RunResult& r,
                   const MetricsSummary& m) {
  auto out = open_out(file);
  out << "orders_generated: " << m.orders_generated << "\n";
  out << "delivered: " << m.delivered << "\n";
  out << "delivery_time_p25_s: " << format_double(m.delivery_time_p25_s)
      << "\n";
  out << "delivery_time_p50_s: " << format_double(m.delivery_time_p50_s)
      << "\n";
  out << "delivery_time_p75_s: " << format_double(m.delivery_time_p75_s)
      << "\n";
  out << "attempts_total: " << m.attempts_total << "\n";
  out << "attempts_success: " << m.attempts_success << "\n";
  out << "attempts_aborted: " << m.attempts_aborted << "\n";
  out << "attempts_lost: " << m.attempts_lost << "\n";
  out << "aborted_pct: " << format_double(m.aborted_pct) << "\n";
  out << "lost_uavs: " << m.lost_uavs << "\n";
  out << "auction_count: " << r.auction_count << "\n";
  out << "reservation_count: " << r.reservation_count << "\n";
  for (std::size_t i = 0; i < m.backlog_age_by_week_s.size(); ++i)
    out << "backlog_age_week" << (i + 1)
        << "_s: " << format_double(m.backlog_age_by_week_s[i]) << "\n";
  out << "---\n";
  out << canonical_text(r.config);
}

}  // namespace

void write_run_result(const std::filesystem::path& dir,
                      const RunResult& result,
                      const MetricsSummary& metrics) {
  std::filesystem::create_directories(dir);
  write_orders(dir / "orders.csv", result);
  write_attempts(dir / "attempts.csv", result);
  write_models(dir / "models.csv", result);
  write_accuracy(dir / "accuracy.csv", metrics);
  write_summary(dir / "summary.txt", result, metrics);
}

void write_soh_grid(const std::filesystem::path& file,
                    const std::vector<GridCell>& grid) {
  auto out = open_out(file);
  out << "soc_pct,distance_m,mass_kg,bidder_count,winner_soh\n";
  for (const GridCell& c : grid) {
    out << format_double(c.soc_pct) << "," << format_double(c.distance_m)
        << "," << format_double(c.mass_kg) << "," << c.bidder_count << ",";
    if (c.winner_soh) out << format_double(*c.winner_soh);
    out << "\n";
  }
}

std::vector<OrderRow> read_orders_csv(const std::filesystem::path& file) {
  auto in = open_in(file);
  std::string line;
  if (!std::getline(in, line) ||
      line.rfind("order_id,", 0) != 0)
    throw std::runtime_error("orders csv: bad header in " + file.string());
  std::vector<OrderRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 7)
      throw std::runtime_error("orders csv: bad row '" + line + "'");
    OrderRow row;
    row.order_id = std::stol(f[0]);
    row.arrival_time_s = parse_double(f[1]);
    row.mass_kg = parse_double(f[2]);
    row.distance_m = parse_double(f[3]);
    row.delivered = !f[4].empty();
    row.delivered_time_s = row.delivered ? parse_double(f[4]) : 0.0;
    row.attempt_count = std::stoi(f[5]);
    row.final_status = f[6];
    rows.push_back(row);
  }
  return rows;
}

std::vector<AccuracyRow> read_accuracy_csv(const std::filesystem::path& file) {
  auto in = open_in(file);
  std::string line;
  if (!std::getline(in, line) || line.rfind("week,", 0) != 0)
    throw std::runtime_error("accuracy csv: bad header in " + file.string());
  std::vector<AccuracyRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 3)
      throw std::runtime_error("accuracy csv: bad row '" + line + "'");
    rows.push_back(AccuracyRow{std::stoi(f[0]), std::stoi(f[1]),
                               parse_double(f[2])});
  }
  return rows;
}

std::vector<std::pair<std::string, std::string>> read_summary(
    const std::filesystem::path& file) {
  auto in = open_in(file);
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  while (std::getline(in, line)) {
    if (line == "---") break;
    std::size_t colon = line.find(": ");
    if (colon == std::string::npos) continue;
    pairs.emplace_back(line.substr(0, colon), line.substr(colon + 2));
  }
  return pairs;
}

}  // namespace fleetsim
