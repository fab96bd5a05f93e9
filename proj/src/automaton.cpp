#include "swlearn/automaton.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

#include "swlearn/errors.hpp"

namespace swlearn {

EventAlphabet::EventAlphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw ValidationError("event alphabet must not be empty");
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw ValidationError("event names must be non-empty");
    if (n.find_first_of(" \t\r\n") != std::string::npos) {
      throw ValidationError("event name contains whitespace: '" + n + "'");
    }
    if (!seen.insert(n).second) throw ValidationError("duplicate event name: " + n);
  }
}

std::optional<EventId> EventAlphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<EventId>(i);
  }
  return std::nullopt;
}

EventAlphabet EventAlphabet::numbered(std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) names.push_back("e" + std::to_string(i));
  return EventAlphabet(std::move(names));
}

Word Word::slice(std::size_t first, std::size_t last) const {
  last = std::min(last, events_.size());
  if (first >= last) return {};
  return Word(std::vector<EventId>(events_.begin() + static_cast<std::ptrdiff_t>(first),
                                   events_.begin() + static_cast<std::ptrdiff_t>(last)));
}

Word operator+(const Word& a, const Word& b) {
  std::vector<EventId> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.events_.begin(), a.events_.end());
  out.insert(out.end(), b.events_.begin(), b.events_.end());
  return Word(std::move(out));
}

Word operator+(const Word& a, EventId e) {
  Word out = a;
  out.push_back(e);
  return out;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  // FNV-1a over the event indices.
  std::uint64_t h = 1469598103934665603ULL;
  for (EventId e : w) {
    h ^= e + 1;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

Word parse_word(const EventAlphabet& alphabet, std::string_view text) {
  Word w;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token == "ε" || token == "eps") continue;
    auto e = alphabet.find(token);
    if (!e) throw InvalidEvent("unknown event '" + token + "'");
    w.push_back(*e);
  }
  return w;
}

std::string format_word(const EventAlphabet& alphabet, const Word& w) {
  if (w.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += alphabet.name(w[i]);
  }
  return out;
}

Fa::Fa(EventAlphabet alphabet, std::size_t num_nodes, NodeId initial, std::vector<NodeId> delta,
       std::vector<LabelId> gamma)
    : alphabet_(std::move(alphabet)), initial_(initial), delta_(std::move(delta)), gamma_(std::move(gamma)) {
  if (alphabet_.size() == 0) throw ValidationError("automaton needs at least one event");
  if (num_nodes == 0) throw ValidationError("automaton needs at least one node");
  if (initial_ >= num_nodes) throw ValidationError("initial node out of range");
  if (gamma_.size() != num_nodes) throw ValidationError("gamma must have one label per node");
  if (delta_.size() != num_nodes * alphabet_.size()) {
    throw ValidationError("delta must have |Q| x |Σ| entries");
  }
  for (NodeId t : delta_) {
    if (t >= num_nodes) throw ValidationError("delta refers to node " + std::to_string(t));
  }
}

NodeId Fa::next(NodeId q, EventId e) const {
  if (e >= alphabet_.size()) throw InvalidEvent("event index " + std::to_string(e) + " out of range");
  return delta_.at(static_cast<std::size_t>(q) * alphabet_.size() + e);
}

NodeId Fa::walk(NodeId from, const Word& w) const {
  NodeId q = from;
  for (EventId e : w) q = next(q, e);
  return q;
}

std::vector<NodeId> run(const Fa& fa, const Word& w) {
  std::vector<NodeId> nodes;
  nodes.reserve(w.size() + 1);
  NodeId q = fa.initial();
  nodes.push_back(q);
  for (EventId e : w) {
    q = fa.next(q, e);
    nodes.push_back(q);
  }
  return nodes;
}

std::vector<LabelId> language_of(const Fa& fa, const Word& w) {
  std::vector<LabelId> labels;
  labels.reserve(w.size() + 1);
  for (NodeId q : run(fa, w)) labels.push_back(fa.label(q));
  return labels;
}

LabelId output_of(const Fa& fa, const Word& w) { return fa.label(fa.walk(fa.initial(), w)); }

std::optional<Word> language_equivalent(const Fa& a, const Fa& b, const LabelEq& label_eq) {
  if (a.alphabet() != b.alphabet()) throw AlphabetMismatch("automata use different event alphabets");
  const std::size_t nb = b.num_nodes();
  const std::size_t events = a.num_events();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  struct Visit {
    std::size_t parent;
    EventId event;
  };
  std::vector<std::size_t> slot(a.num_nodes() * nb, kNone);
  std::vector<Visit> visits;
  std::vector<std::pair<NodeId, NodeId>> pairs;

  auto word_to = [&](std::size_t index) {
    std::vector<EventId> rev;
    while (visits[index].parent != kNone) {
      rev.push_back(visits[index].event);
      index = visits[index].parent;
    }
    std::reverse(rev.begin(), rev.end());
    return Word(std::move(rev));
  };

  const NodeId a0 = a.initial();
  const NodeId b0 = b.initial();
  slot[a0 * nb + b0] = 0;
  visits.push_back({kNone, 0});
  pairs.emplace_back(a0, b0);
  if (!label_eq(a.label(a0), b.label(b0))) return Word{};

  for (std::size_t head = 0; head < pairs.size(); ++head) {
    const auto [p, q] = pairs[head];
    for (EventId e = 0; e < events; ++e) {
      const NodeId np = a.next(p, e);
      const NodeId nq = b.next(q, e);
      std::size_t& s = slot[static_cast<std::size_t>(np) * nb + nq];
      if (s != kNone) continue;
      s = pairs.size();
      visits.push_back({head, e});
      pairs.emplace_back(np, nq);
      if (!label_eq(a.label(np), b.label(nq))) return word_to(s);
    }
  }
  return std::nullopt;
}

std::optional<Word> language_equivalent(const Fa& a, const Fa& b) {
  return language_equivalent(a, b, [](LabelId x, LabelId y) { return x == y; });
}

Fa reachable_part(const Fa& fa) {
  constexpr NodeId kUnseen = static_cast<NodeId>(-1);
  std::vector<NodeId> renumber(fa.num_nodes(), kUnseen);
  std::vector<NodeId> order;
  renumber[fa.initial()] = 0;
  order.push_back(fa.initial());
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (EventId e = 0; e < fa.num_events(); ++e) {
      const NodeId t = fa.next(order[head], e);
      if (renumber[t] == kUnseen) {
        renumber[t] = static_cast<NodeId>(order.size());
        order.push_back(t);
      }
    }
  }
  std::vector<NodeId> delta;
  std::vector<LabelId> gamma;
  delta.reserve(order.size() * fa.num_events());
  for (NodeId old : order) {
    gamma.push_back(fa.label(old));
    for (EventId e = 0; e < fa.num_events(); ++e) delta.push_back(renumber[fa.next(old, e)]);
  }
  return Fa(fa.alphabet(), order.size(), 0, std::move(delta), std::move(gamma));
}

Fa rerooted(const Fa& fa, NodeId q) {
  return Fa(fa.alphabet(), fa.num_nodes(), q, fa.delta(), fa.gamma());
}

}  // namespace swlearn
