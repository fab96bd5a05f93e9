#pragma once

// The two teachers of the learning setup: an IO-generator that simulates the
// hidden system from a chosen initial state, and an equivalence checker that
// answers a hypothesis with a counterexample word or nothing.

#include <cstdint>
#include <optional>
#include <vector>

#include "swlearn/switched_system.hpp"

namespace swlearn {

/// Counters are per oracle instance and only ever increase.
struct QueryStats {
  std::uint64_t io_queries = 0;           ///< one per simulated column
  std::uint64_t output_computations = 0;  ///< runs of the output recovery
  std::uint64_t equivalence_queries = 0;
};

class ObservationOracle {
 public:
  virtual ~ObservationOracle() = default;

  /// exec of the hidden system from every column of x0; counts x0.cols() queries.
  virtual std::vector<Matrix> exec_query(const Matrix& x0, const Word& w) = 0;
  virtual Index dimension() const = 0;
  virtual const EventAlphabet& alphabet() const = 0;

  QueryStats& stats() { return stats_; }
  const QueryStats& stats() const { return stats_; }

 protected:
  QueryStats stats_;
};

class EquivalenceOracle {
 public:
  virtual ~EquivalenceOracle() = default;

  /// Nothing when the hypothesis is accepted, otherwise a word on which the
  /// hypothesis output differs from the hidden one.
  virtual std::optional<Word> check(const SwitchedSystem& hypothesis) = 0;

  QueryStats& stats() { return stats_; }
  const QueryStats& stats() const { return stats_; }

 protected:
  QueryStats stats_;
};

/// Simulator with full knowledge of the hidden system.
class WhiteBoxObservation final : public ObservationOracle {
 public:
  explicit WhiteBoxObservation(SwitchedSystem hidden);

  std::vector<Matrix> exec_query(const Matrix& x0, const Word& w) override;
  Index dimension() const override { return hidden_.d; }
  const EventAlphabet& alphabet() const override { return hidden_.fa.alphabet(); }

  const SwitchedSystem& hidden() const { return hidden_; }

 private:
  SwitchedSystem hidden_;
};

/// Exact product-automaton check against the hidden system, labels compared
/// as matrices within `tol`. Returns shortest counterexamples.
class WhiteBoxEquivalence final : public EquivalenceOracle {
 public:
  explicit WhiteBoxEquivalence(SwitchedSystem hidden, double tol = kLabelTolerance);

  std::optional<Word> check(const SwitchedSystem& hypothesis) override;

 private:
  SwitchedSystem hidden_;
  double tol_;
};

/// Black-box checker: recovers the hidden output of every word of length
/// 0..max_length (by length, then by event index) and compares it with the
/// hypothesis. Exhausting the bound yields "equivalent", which is only as
/// sound as the bound is large.
class BoundedTestingEquivalence final : public EquivalenceOracle {
 public:
  BoundedTestingEquivalence(ObservationOracle& obs, std::size_t max_length, double tol = kLabelTolerance);

  std::optional<Word> check(const SwitchedSystem& hypothesis) override;

  std::size_t max_length() const { return max_length_; }

 private:
  ObservationOracle& obs_;
  std::size_t max_length_;
  double tol_;
};

/// Throws ValidationError when `hidden` does not validate.
WhiteBoxObservation white_box_observation(const SwitchedSystem& hidden);
WhiteBoxEquivalence white_box_equivalence(const SwitchedSystem& hidden, double tol = kLabelTolerance);
BoundedTestingEquivalence bounded_testing_equivalence(ObservationOracle& obs, std::size_t max_length,
                                                      double tol = kLabelTolerance);

}  // namespace swlearn
