#pragma once

// Event-deterministic labelled finite automata: complete transition tables
// over an ordered event alphabet, with an integer label on every node.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swlearn {

using EventId = std::uint32_t;
using NodeId = std::uint32_t;
using LabelId = std::uint32_t;

class EventAlphabet {
 public:
  EventAlphabet() = default;
  explicit EventAlphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(EventId e) const { return names_.at(e); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<EventId> find(std::string_view name) const;

  /// Events e1..eN.
  static EventAlphabet numbered(std::size_t count);

  friend bool operator==(const EventAlphabet&, const EventAlphabet&) = default;

 private:
  std::vector<std::string> names_;
};

/// A finite sequence of event indices; the empty word is epsilon.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<EventId> events) : events_(events) {}
  explicit Word(std::vector<EventId> events) : events_(std::move(events)) {}

  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  EventId operator[](std::size_t i) const { return events_[i]; }
  auto begin() const { return events_.begin(); }
  auto end() const { return events_.end(); }
  std::span<const EventId> events() const { return events_; }

  void push_back(EventId e) { events_.push_back(e); }

  /// Events [first, last) as a new word.
  Word slice(std::size_t first, std::size_t last) const;
  Word prefix(std::size_t n) const { return slice(0, n); }
  Word suffix_from(std::size_t first) const { return slice(first, size()); }

  friend Word operator+(const Word& a, const Word& b);
  friend Word operator+(const Word& a, EventId e);
  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<EventId> events_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

/// Space-separated event names; an empty or whitespace-only string is epsilon.
Word parse_word(const EventAlphabet& alphabet, std::string_view text);
/// Space-separated event names, or "ε" for the empty word.
std::string format_word(const EventAlphabet& alphabet, const Word& w);

/// Complete event-deterministic labelled automaton (Q, q0, Σ, Λ, δ, γ).
/// Labels are ids; what they denote is up to the owner.
class Fa {
 public:
  /// `delta` is row-major: delta[q * |Σ| + e]. Throws ValidationError when the
  /// table is not complete over valid node ids or `initial` is out of range.
  Fa(EventAlphabet alphabet, std::size_t num_nodes, NodeId initial, std::vector<NodeId> delta,
     std::vector<LabelId> gamma);

  std::size_t num_nodes() const { return gamma_.size(); }
  std::size_t num_events() const { return alphabet_.size(); }
  NodeId initial() const { return initial_; }
  const EventAlphabet& alphabet() const { return alphabet_; }

  NodeId next(NodeId q, EventId e) const;
  LabelId label(NodeId q) const { return gamma_.at(q); }
  const std::vector<NodeId>& delta() const { return delta_; }
  const std::vector<LabelId>& gamma() const { return gamma_; }

  /// Node reached from `from` after reading w.
  NodeId walk(NodeId from, const Word& w) const;

  friend bool operator==(const Fa&, const Fa&) = default;

 private:
  EventAlphabet alphabet_;
  NodeId initial_ = 0;
  std::vector<NodeId> delta_;
  std::vector<LabelId> gamma_;
};

/// Node sequence q0 q1 ... qn visited on w; length |w| + 1.
std::vector<NodeId> run(const Fa& fa, const Word& w);
/// Labels along run(fa, w).
std::vector<LabelId> language_of(const Fa& fa, const Word& w);
/// Label of the last node of run(fa, w).
LabelId output_of(const Fa& fa, const Word& w);

/// Decides whether label `a` of the first automaton matches label `b` of the second.
using LabelEq = std::function<bool(LabelId, LabelId)>;

/// Breadth-first search over the product automaton from the pair of initial
/// nodes. Returns nothing when every reachable pair carries matching labels,
/// otherwise a shortest word whose outputs differ. Among words of that length
/// the first in event-index order of BFS discovery is returned.
std::optional<Word> language_equivalent(const Fa& a, const Fa& b, const LabelEq& label_eq);

/// Label ids compared for equality.
std::optional<Word> language_equivalent(const Fa& a, const Fa& b);

/// Restriction to nodes reachable from the initial node, renumbered in BFS
/// order (the initial node becomes 0).
Fa reachable_part(const Fa& fa);

/// Rooted at `q` instead of the original initial node.
Fa rerooted(const Fa& fa, NodeId q);

}  // namespace swlearn
