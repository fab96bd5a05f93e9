#pragma once

// Active learning of a switched system's automaton from an output oracle and
// an equivalence oracle, using access words Q and test words T.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "swlearn/output_query.hpp"

namespace swlearn {

/// Access words Q and test words T, both insertion-ordered with ε first.
/// Access word i becomes hypothesis node i.
struct ObservationStore {
  std::vector<Word> access{Word{}};
  std::vector<Word> tests{Word{}};

  /// Appends unless already present; returns whether it was added.
  bool add_access(const Word& w);
  bool add_test(const Word& w);
};

/// Label id of Output(w) for the hidden system.
using LabelQuery = std::function<LabelId(const Word&)>;

/// Outputs of u·t for every t in T, in T order.
std::vector<LabelId> signature(const Word& u, const std::vector<Word>& tests, const LabelQuery& query);

/// Output(u·t) == Output(v·t) for every t in T.
bool t_equivalent(const Word& u, const Word& v, const std::vector<Word>& tests, const LabelQuery& query);

/// No two distinct access words are T-equivalent. Checks every pair.
bool is_separable(const ObservationStore& store, const LabelQuery& query);

struct Defect {
  std::size_t access_index;  ///< position of q in Q
  EventId event;

  friend bool operator==(const Defect&, const Defect&) = default;
};

/// Nothing when every q·e is T-equivalent to some access word; otherwise the
/// first (q, e) that is not, scanning Q in order and events in order.
std::optional<Defect> find_defect(const ObservationStore& store, std::size_t num_events, const LabelQuery& query);

/// Called after every change to (Q, T).
using StoreObserver = std::function<void(const ObservationStore&)>;

/// Adds defect words q·e to Q until the store is closed. Returns the number of
/// words added. Throws BudgetExceeded when |Q| would pass `max_access_words`
/// (0 means unbounded).
std::size_t close(ObservationStore& store, std::size_t num_events, const LabelQuery& query,
                  const StoreObserver& observer = {}, std::size_t max_access_words = 0);

/// Hypothesis automaton of a closed, separable store: nodes are the access
/// words (ε is node 0), q -e-> the access word T-equivalent to q·e, and node q
/// is labelled Output(q). Throws NotClosed when some q·e has no
/// representative.
Fa build_hypothesis_fa(const ObservationStore& store, const EventAlphabet& alphabet, const LabelQuery& query);

/// build_hypothesis_fa with the querier's registry supplying the matrices.
SwitchedSystem build_hypothesis(const ObservationStore& store, const EventAlphabet& alphabet, OutputQuerier& querier);

/// New access word q and test word t extracted from a counterexample.
struct CounterexampleSplit {
  Word access;
  Word test;
  std::size_t index = 0;        ///< i with O_i != O_{i+1}
  std::size_t evaluations = 0;  ///< outputs requested, endpoints included
};

/// Binary search over O_i = Output(q'_i · w[i+1..n]), where q'_i is the access
/// word of the hypothesis node reached after the first i events of w. Keeps
/// a range [j, k] with O_j != O_k and halves it by testing the midpoint.
/// Returns q = q'_i · w_{i+1} (never already in Q) and t = w[i+2..n].
///
/// `hypothesis` must be the automaton built from `store`. Throws
/// NotACounterexample when O_0 == O_n.
CounterexampleSplit process_counterexample(const Word& w, const Fa& hypothesis, const ObservationStore& store,
                                           const LabelQuery& query);

struct LearnOptions {
  double tol = kLabelTolerance;
  /// Equivalence rounds allowed; 0 selects 10 * |Σ| * (|Q| + 1), re-evaluated
  /// as Q grows.
  std::size_t max_rounds = 0;
  /// 0 means unbounded.
  std::size_t max_access_words = 0;
  StoreObserver observer;
};

struct CounterexampleRecord {
  std::size_t length = 0;
  std::size_t evaluations = 0;
  std::uint64_t output_computations = 0;  ///< fresh recoveries, cache misses only
};

struct LearnStats {
  std::uint64_t io_queries = 0;
  std::uint64_t output_computations = 0;
  std::uint64_t equivalence_queries = 0;
  std::uint64_t rounds = 0;
  double wall_ms = 0;
};

struct LearnResult {
  SwitchedSystem system;
  LearnStats stats;
  ObservationStore store;
  std::vector<CounterexampleRecord> counterexamples;
};

/// Close, hypothesise, ask for a counterexample, split it, repeat. The
/// returned system passed the equivalence oracle.
LearnResult learn(ObservationOracle& obs, EquivalenceOracle& eq, const EventAlphabet& alphabet, Index d,
                  const LearnOptions& options = {});

/// {"io_queries":..,"output_computations":..,"equivalence_queries":..,"rounds":..,"wall_ms":..}
std::string stats_json(const LearnStats& stats);

/// Model JSON with an extra "stats" object.
std::string learn_result_json(const LearnResult& result);

}  // namespace swlearn
