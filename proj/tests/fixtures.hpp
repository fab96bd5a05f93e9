#pragma once

// Shared systems and independent oracles for the test suites.

#include <map>
#include <set>
#include <vector>

#include "swlearn/bench.hpp"

namespace swlearn::testing {

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index r = 0;
  for (const auto& row : rows) {
    Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

inline Matrix col(std::initializer_list<double> values) {
  Matrix m(static_cast<Index>(values.size()), 1);
  Index r = 0;
  for (double v : values) m(r++, 0) = v;
  return m;
}

inline const Matrix kA1 = mat({{1.0, 0.3}, {0.7, 1.2}});
inline const Matrix kA2 = mat({{0.4, 0.8}, {-0.7, 0.6}});
inline const Matrix kA3 = mat({{1.2, 0.7}, {1.6, 0.1}});

/// Four nodes over {e1, e2}; labels l1 l2 l2 l3 as ids 0 1 1 2.
inline SwitchedSystem four_node() {
  Fa fa(EventAlphabet({"e1", "e2"}), 4, 0, {3, 1, 2, 0, 1, 3, 0, 2}, {0, 1, 1, 2});
  return SwitchedSystem{std::move(fa), {kA1, kA2, kA3}, 2};
}

/// Hypothesis of the four-node learning run after the first closure:
/// access words ε, e1, e2.
inline SwitchedSystem four_node_first_hypothesis() {
  Fa fa(EventAlphabet({"e1", "e2"}), 3, 0, {1, 2, 0, 2, 2, 0}, {0, 2, 1});
  return SwitchedSystem{std::move(fa), {kA1, kA2, kA3}, 2};
}

/// Three-mode plant with fault event f (dwell) and schedule event g.
inline SwitchedSystem fault_modes() {
  Fa fa(EventAlphabet({"f", "g"}), 4, 0, {0, 1, 1, 2, 2, 3, 3, 0}, {0, 1, 1, 2});
  return SwitchedSystem{std::move(fa),
                        {mat({{0.2, 0.4, 0.8}, {0.3, 0.6, 0.9}, {0.5, 1.5, 1.5}}),
                         mat({{-1, 0.1, 0.2}, {0.3, -1, 0.4}, {0.5, 0.6, -1}}),
                         mat({{-0.1, -0.2, 0.3}, {-0.1, -0.4, 0.6}, {0.8, 0.7, -0.6}})},
                        3};
}

inline SwitchedSystem single_node() {
  Fa fa(EventAlphabet({"e1", "e2"}), 1, 0, {0, 0}, {0});
  return SwitchedSystem{std::move(fa), {mat({{2.0, 0.5}, {0.0, 3.0}})}, 2};
}

/// Every word of length <= max_length, shortest first.
inline std::vector<Word> all_words(std::size_t num_events, std::size_t max_length) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (EventId e = 0; e < num_events; ++e) out.push_back(out[i] + e);
    }
    begin = end;
  }
  return out;
}

/// Number of nodes of the minimal automaton, by Moore partition refinement
/// over the reachable part. Labels compared as ids.
inline std::size_t minimal_node_count(const Fa& input) {
  const Fa fa = reachable_part(input);
  std::vector<std::size_t> block(fa.num_nodes());
  {
    std::map<LabelId, std::size_t> ids;
    for (NodeId q = 0; q < fa.num_nodes(); ++q) block[q] = ids.emplace(fa.label(q), ids.size()).first->second;
  }
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(fa.num_nodes());
    for (NodeId q = 0; q < fa.num_nodes(); ++q) {
      std::vector<std::size_t> key{block[q]};
      for (EventId e = 0; e < fa.num_events(); ++e) key.push_back(block[fa.next(q, e)]);
      next[q] = ids.emplace(key, ids.size()).first->second;
    }
    const std::size_t before = std::set<std::size_t>(block.begin(), block.end()).size();
    block = next;
    if (ids.size() == before) return ids.size();
  }
}

/// Label ids of a system whose distinct ids carry distinct matrices, so id
/// comparison is matrix comparison.
inline LabelQuery white_box_query(const SwitchedSystem& sys) {
  return [&sys](const Word& w) { return output_of(sys.fa, w); };
}

inline GenConfig small_config(std::uint64_t seed, std::size_t nodes, std::size_t events, std::size_t labels,
                              Index dim) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.num_nodes = nodes;
  cfg.num_events = events;
  cfg.num_labels = labels;
  cfg.dim = dim;
  return cfg;
}

}  // namespace swlearn::testing
