#pragma once

// Learning a known system through the oracles, and seeded benchmark sweeps.

#include <string>
#include <vector>

#include "swlearn/benchgen.hpp"
#include "swlearn/learner.hpp"

namespace swlearn {

enum class EquivalenceMode { Exact, Bounded };

struct LearnSetup {
  EquivalenceMode mode = EquivalenceMode::Exact;
  /// Bound for the testing checker; 0 selects 2 * |Q_hidden| + 1.
  std::size_t max_length = 0;
  double tol = kLabelTolerance;
};

EquivalenceMode parse_equivalence_mode(const std::string& name);

/// Wraps `hidden` in the oracles selected by `setup` and learns it.
LearnResult learn_hidden(const SwitchedSystem& hidden, const LearnSetup& setup, const LearnOptions& options = {});

struct BenchGrid {
  std::vector<GenConfig> configs;
  LearnSetup setup;
};

struct BenchRow {
  GenConfig config;
  LearnStats stats;
  std::size_t hidden_nodes = 0;
  std::size_t learned_nodes = 0;
  bool verified = false;  ///< learned system passed the exact product check
};

/// {"eq": "exact"|"bounded", "L": int, "tol": real,
///  "runs": [{"nodes":..,"events":..,"labels":..,"dim":..,"seed":.. | "seeds":[..]}]}
/// Only "runs" is required. Throws ParseError.
BenchGrid parse_grid(const std::string& text);

/// Rows come back in grid order whatever the number of workers.
std::vector<BenchRow> run_bench(const BenchGrid& grid, unsigned workers = 1);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& row);
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace swlearn
