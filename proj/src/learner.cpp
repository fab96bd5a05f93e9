#include "swlearn/learner.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "json.hpp"

namespace swlearn {

bool ObservationStore::add_access(const Word& w) {
  if (std::find(access.begin(), access.end(), w) != access.end()) return false;
  access.push_back(w);
  return true;
}

bool ObservationStore::add_test(const Word& w) {
  if (std::find(tests.begin(), tests.end(), w) != tests.end()) return false;
  tests.push_back(w);
  return true;
}

std::vector<LabelId> signature(const Word& u, const std::vector<Word>& tests, const LabelQuery& query) {
  std::vector<LabelId> row;
  row.reserve(tests.size());
  for (const Word& t : tests) row.push_back(query(u + t));
  return row;
}

bool t_equivalent(const Word& u, const Word& v, const std::vector<Word>& tests, const LabelQuery& query) {
  if (u == v) return true;
  for (const Word& t : tests) {
    if (query(u + t) != query(v + t)) return false;
  }
  return true;
}

bool is_separable(const ObservationStore& store, const LabelQuery& query) {
  const auto& q = store.access;
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      if (q[i] == q[j] || t_equivalent(q[i], q[j], store.tests, query)) return false;
    }
  }
  return true;
}

namespace {

using Row = std::vector<LabelId>;

// Signature -> position in Q. Separability makes signatures unique.
std::map<Row, std::size_t> index_rows(const ObservationStore& store, const LabelQuery& query) {
  std::map<Row, std::size_t> rows;
  for (std::size_t i = 0; i < store.access.size(); ++i) rows.emplace(signature(store.access[i], store.tests, query), i);
  return rows;
}

}  // namespace

std::optional<Defect> find_defect(const ObservationStore& store, std::size_t num_events, const LabelQuery& query) {
  const auto rows = index_rows(store, query);
  for (std::size_t i = 0; i < store.access.size(); ++i) {
    for (EventId e = 0; e < num_events; ++e) {
      if (!rows.contains(signature(store.access[i] + e, store.tests, query))) return Defect{i, e};
    }
  }
  return std::nullopt;
}

std::size_t close(ObservationStore& store, std::size_t num_events, const LabelQuery& query,
                  const StoreObserver& observer, std::size_t max_access_words) {
  // Adding access words never turns an earlier (q, e) into a defect, so one
  // pass over the growing Q finds the defects in the same order as repeated
  // first-defect scans.
  auto rows = index_rows(store, query);
  std::size_t added = 0;
  for (std::size_t i = 0; i < store.access.size(); ++i) {
    for (EventId e = 0; e < num_events; ++e) {
      Word next = store.access[i] + e;
      Row row = signature(next, store.tests, query);
      if (rows.contains(row)) continue;
      if (max_access_words != 0 && store.access.size() >= max_access_words) {
        throw BudgetExceeded("access word budget of " + std::to_string(max_access_words) + " exhausted");
      }
      rows.emplace(std::move(row), store.access.size());
      store.access.push_back(std::move(next));
      ++added;
      if (observer) observer(store);
    }
  }
  return added;
}

Fa build_hypothesis_fa(const ObservationStore& store, const EventAlphabet& alphabet, const LabelQuery& query) {
  const auto rows = index_rows(store, query);
  const std::size_t n = store.access.size();
  std::vector<NodeId> delta;
  delta.reserve(n * alphabet.size());
  std::vector<LabelId> gamma;
  gamma.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    gamma.push_back(query(store.access[i]));
    for (EventId e = 0; e < alphabet.size(); ++e) {
      auto it = rows.find(signature(store.access[i] + e, store.tests, query));
      if (it == rows.end()) {
        throw NotClosed("no access word is T-equivalent to " + format_word(alphabet, store.access[i] + e));
      }
      delta.push_back(static_cast<NodeId>(it->second));
    }
  }
  return Fa(alphabet, n, 0, std::move(delta), std::move(gamma));
}

SwitchedSystem build_hypothesis(const ObservationStore& store, const EventAlphabet& alphabet, OutputQuerier& querier) {
  Fa fa = build_hypothesis_fa(store, alphabet, [&querier](const Word& w) { return querier(w); });
  return SwitchedSystem{std::move(fa), querier.registry().matrices(), querier.oracle().dimension()};
}

CounterexampleSplit process_counterexample(const Word& w, const Fa& hypothesis, const ObservationStore& store,
                                           const LabelQuery& query) {
  if (hypothesis.num_nodes() != store.access.size()) {
    throw NotClosed("hypothesis does not belong to this store");
  }
  const std::size_t n = w.size();
  const std::vector<NodeId> states = run(hypothesis, w);

  CounterexampleSplit split;
  auto outcome = [&](std::size_t i) {
    ++split.evaluations;
    return query(store.access[states[i]] + w.suffix_from(i));
  };

  std::size_t lo = 0;
  std::size_t hi = n;
  LabelId out_lo = outcome(lo);
  const LabelId out_hi = outcome(hi);
  if (out_lo == out_hi) {
    throw NotACounterexample("word does not separate hypothesis and hidden system");
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const LabelId out_mid = outcome(mid);
    if (out_mid != out_lo) {
      hi = mid;
    } else {
      lo = mid;
      out_lo = out_mid;
    }
  }
  split.index = lo;
  split.access = store.access[states[lo]] + w[lo];
  split.test = w.suffix_from(lo + 1);
  return split;
}

LearnResult learn(ObservationOracle& obs, EquivalenceOracle& eq, const EventAlphabet& alphabet, Index d,
                  const LearnOptions& options) {
  if (obs.dimension() != d) throw DimensionMismatch("learn: oracle dimension differs from d");
  if (obs.alphabet() != alphabet) throw AlphabetMismatch("learn: oracle alphabet differs from the given one");

  const auto start = std::chrono::steady_clock::now();
  const QueryStats obs_before = obs.stats();
  const QueryStats eq_before = eq.stats();

  OutputQuerier querier(obs, options.tol);
  const LabelQuery query = [&querier](const Word& w) { return querier(w); };

  LearnResult result{SwitchedSystem{Fa(alphabet, 1, 0, std::vector<NodeId>(alphabet.size(), 0), {0}), {}, d},
                     {}, {}, {}};
  ObservationStore& store = result.store;
  if (options.observer) options.observer(store);

  while (true) {
    const std::size_t cap = options.max_rounds != 0 ? options.max_rounds
                                                    : 10 * alphabet.size() * (store.access.size() + 1);
    if (result.stats.rounds >= cap) {
      throw BudgetExceeded("learning did not converge within " + std::to_string(cap) + " rounds");
    }
    ++result.stats.rounds;

    close(store, alphabet.size(), query, options.observer, options.max_access_words);
    SwitchedSystem hypothesis = build_hypothesis(store, alphabet, querier);
    const std::optional<Word> cex = eq.check(hypothesis);
    if (!cex) {
      result.system = std::move(hypothesis);
      break;
    }

    const std::uint64_t computed_before = obs.stats().output_computations;
    const CounterexampleSplit split = process_counterexample(*cex, hypothesis.fa, store, query);
    result.counterexamples.push_back(
        {cex->size(), split.evaluations, obs.stats().output_computations - computed_before});

    if (options.max_access_words != 0 && store.access.size() >= options.max_access_words) {
      throw BudgetExceeded("access word budget of " + std::to_string(options.max_access_words) + " exhausted");
    }
    store.add_access(split.access);
    store.add_test(split.test);
    if (options.observer) options.observer(store);
  }

  result.stats.io_queries = obs.stats().io_queries - obs_before.io_queries;
  result.stats.output_computations = obs.stats().output_computations - obs_before.output_computations;
  result.stats.equivalence_queries = eq.stats().equivalence_queries - eq_before.equivalence_queries;
  result.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

namespace {

nlohmann::ordered_json stats_object(const LearnStats& s) {
  nlohmann::ordered_json j;
  j["io_queries"] = s.io_queries;
  j["output_computations"] = s.output_computations;
  j["equivalence_queries"] = s.equivalence_queries;
  j["rounds"] = s.rounds;
  j["wall_ms"] = s.wall_ms;
  return j;
}

}  // namespace

std::string stats_json(const LearnStats& stats) { return stats_object(stats).dump(2) + "\n"; }

std::string learn_result_json(const LearnResult& result) {
  auto j = nlohmann::ordered_json::parse(save_json(result.system));
  j["stats"] = stats_object(result.stats);
  return j.dump(2) + "\n";
}

}  // namespace swlearn
