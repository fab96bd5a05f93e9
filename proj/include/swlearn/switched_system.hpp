#pragma once

#include <string>
#include <vector>

#include "swlearn/automaton.hpp"
#include "swlearn/linalg.hpp"

namespace swlearn {

/// An automaton whose label ids index d x d dynamics matrices. While the
/// run sits on node q the state evolves as x <- A_{gamma(q)} x.
struct SwitchedSystem {
  Fa fa;
  std::vector<Matrix> matrices;  ///< indexed by label id
  Index d = 0;

  const Matrix& matrix_of(LabelId label) const { return matrices.at(label); }
};

/// State sequence X0 X1 ... X_{n+1} for a word of length n: every node on the
/// run applies its matrix once, the last node included. X0 may hold several
/// columns; each evolves independently.
std::vector<Matrix> exec(const SwitchedSystem& sys, const Matrix& x0, const Word& w);

struct Violation {
  enum class Kind { MissingMatrix, BadDimension, RankDeficientLabel, NonFiniteEntry };
  Kind kind;
  LabelId label;

  friend bool operator==(const Violation&, const Violation&) = default;
};

std::string describe(const Violation& v);

/// Empty iff every label used by the automaton has a finite, full-rank d x d
/// matrix (and every stored matrix is d x d).
std::vector<Violation> validate(const SwitchedSystem& sys, double rank_tol = kPivotTolerance);

/// Matrix comparison across two systems, for language_equivalent.
LabelEq matrix_label_eq(const SwitchedSystem& a, const SwitchedSystem& b, double tol = kLabelTolerance);

/// Exact product check with labels compared as matrices.
std::optional<Word> equivalent_systems(const SwitchedSystem& a, const SwitchedSystem& b,
                                       double tol = kLabelTolerance);

/// Throws ParseError on malformed input and ValidationError on a model that
/// fails validate().
SwitchedSystem load_json(const std::string& text);
std::string save_json(const SwitchedSystem& sys);

SwitchedSystem load_json_file(const std::string& path);
void save_json_file(const SwitchedSystem& sys, const std::string& path);

/// Graphviz rendering: nodes "q{i} / A{label}", one edge per (node, event).
std::string to_dot(const SwitchedSystem& sys);

}  // namespace swlearn
