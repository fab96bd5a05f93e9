#pragma once

// Seeded random switched systems for benchmarks and property tests.

#include <cstdint>
#include <random>

#include "swlearn/switched_system.hpp"

namespace swlearn {

struct GenConfig {
  std::size_t num_nodes = 1;
  std::size_t num_events = 1;
  std::size_t num_labels = 1;
  Index dim = 1;
  std::uint64_t seed = 0;
  double full_rank_threshold = 1e-6;
  bool require_reachable = true;
};

/// Portable draws on top of std::mt19937_64. The standard distributions are
/// implementation-defined, so the mappings are spelled out here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound), by rejection.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi) with 53 random bits.
  double uniform(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

/// Complete automaton with uniform transitions and uniform labels, and one
/// d x d matrix per label id with entries uniform in [-1, 1], redrawn until
/// full rank. With require_reachable the transition table is redrawn a
/// bounded number of times until every node is reachable; failing that, the
/// reachable part of the last draw is returned. Same config, same system.
SwitchedSystem random_system(const GenConfig& cfg);

}  // namespace swlearn
