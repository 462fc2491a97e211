#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fleetsim/config.hpp"
#include "fleetsim/engine.hpp"

namespace fleetsim {

// A sweep over simulation cells: the cross product of the axis vectors,
// with seeds_per_cell independent replicates each.
struct ExperimentSpec {
  RunConfig base;
  std::vector<double> tau_minutes{15, 20, 25, 30, 35, 40};
  std::vector<StrategyKind> strategies{StrategyKind::learning};
  std::vector<WinnerRule> rules{WinnerRule::least_confident,
                                WinnerRule::most_confident,
                                WinnerRule::random};
  std::vector<double> threshold_levels{80};  // used by threshold cells only
  std::vector<double> xi_values;             // empty = inherit base.xi
  std::vector<int> fleet_sizes;              // empty = inherit base.fleet_size
  std::vector<bool> forecasting_modes{false};
  int seeds_per_cell = 20;
  std::uint64_t master_seed = 1;
  // Weeks of warm-up on a separate order stream; the learned models carry
  // over into the measured run (0 = no pretraining).
  double pretrain_weeks = 0.0;
  bool emit_soh_grid = false;
  int jobs = 0;  // 0 = hardware concurrency
  std::filesystem::path out_dir = "out";
};

struct CellConfig {
  std::string name;   // directory-friendly, e.g. learning_least_confident_tau15
  int cell_index = 0;
  RunConfig config;   // seed filled per replicate
};

// Flat key=value configuration. Unknown keys throw; values are validated on
// assignment. parse_config starts from defaults and applies the file when
// given, then any overrides (CLI flags), in order.
ExperimentSpec parse_config(const std::filesystem::path& file,
                            const std::vector<std::pair<std::string, std::string>>&
                                overrides = {});
void apply_setting(ExperimentSpec& spec, const std::string& key,
                   const std::string& value);

std::vector<CellConfig> enumerate_cells(const ExperimentSpec& spec);

// Replicate seed: stable hash of (master_seed, cell_index, seed_index), so
// inserting a new cell does not shift other cells' randomness.
std::uint64_t derive_cell_seed(std::uint64_t master_seed, int cell_index,
                               int seed_index);

// Output directory of one replicate: out_dir/<cell>/<confighash>_s<seed>.
// The hash covers the requested cell config plus the derived seed; weights
// carried over from a pretraining phase do not move the directory.
std::filesystem::path run_dir(const ExperimentSpec& spec,
                              const CellConfig& cell, int seed_index);

// Runs every cell x seed, writes per-run outputs under
// out_dir/<cell>/<hash>_s<seed>/, then rebuilds the aggregate tables from
// the files on disk. Returns the number of failed runs (0 = success).
int run_experiment(const ExperimentSpec& spec, std::ostream& log);

// Re-reads per-run outputs and rewrites the aggregate CSVs; idempotent.
void write_aggregates(const ExperimentSpec& spec, std::ostream& log);

}  // namespace fleetsim
