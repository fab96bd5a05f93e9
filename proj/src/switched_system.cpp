#include "swlearn/switched_system.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace swlearn {

using json = nlohmann::ordered_json;

std::vector<Matrix> exec(const SwitchedSystem& sys, const Matrix& x0, const Word& w) {
  if (x0.rows() != sys.d) {
    throw DimensionMismatch("exec: initial state has " + std::to_string(x0.rows()) + " rows, system has d = " +
                            std::to_string(sys.d));
  }
  std::vector<Matrix> states;
  states.reserve(w.size() + 2);
  states.push_back(x0);
  NodeId q = sys.fa.initial();
  states.push_back(mat_mul(sys.matrix_of(sys.fa.label(q)), states.back()));
  for (EventId e : w) {
    q = sys.fa.next(q, e);
    states.push_back(mat_mul(sys.matrix_of(sys.fa.label(q)), states.back()));
  }
  return states;
}

std::string describe(const Violation& v) {
  const std::string id = "(" + std::to_string(v.label) + ")";
  switch (v.kind) {
    case Violation::Kind::MissingMatrix: return "MissingMatrix" + id;
    case Violation::Kind::BadDimension: return "BadDimension" + id;
    case Violation::Kind::RankDeficientLabel: return "RankDeficientLabel" + id;
    case Violation::Kind::NonFiniteEntry: return "NonFiniteEntry" + id;
  }
  return "Unknown" + id;
}

std::vector<Violation> validate(const SwitchedSystem& sys, double rank_tol) {
  std::vector<Violation> out;
  for (LabelId label : sys.fa.gamma()) {
    if (label >= sys.matrices.size()) {
      Violation v{Violation::Kind::MissingMatrix, label};
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
  }
  for (std::size_t j = 0; j < sys.matrices.size(); ++j) {
    const Matrix& m = sys.matrices[j];
    const auto label = static_cast<LabelId>(j);
    if (sys.d < 1 || m.rows() != sys.d || m.cols() != sys.d) {
      out.push_back({Violation::Kind::BadDimension, label});
    } else if (!m.allFinite()) {
      out.push_back({Violation::Kind::NonFiniteEntry, label});
    } else if (!is_full_rank(m, rank_tol)) {
      out.push_back({Violation::Kind::RankDeficientLabel, label});
    }
  }
  return out;
}

LabelEq matrix_label_eq(const SwitchedSystem& a, const SwitchedSystem& b, double tol) {
  return [&a, &b, tol](LabelId x, LabelId y) {
    const Matrix& ma = a.matrix_of(x);
    const Matrix& mb = b.matrix_of(y);
    if (ma.rows() != mb.rows() || ma.cols() != mb.cols()) return false;
    return mat_approx_eq(ma, mb, tol);
  };
}

std::optional<Word> equivalent_systems(const SwitchedSystem& a, const SwitchedSystem& b, double tol) {
  return language_equivalent(a.fa, b.fa, matrix_label_eq(a, b, tol));
}

namespace {

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

Matrix matrix_from_json(const json& rows, std::size_t index) {
  const std::string where = "matrices[" + std::to_string(index) + "]";
  if (!rows.is_array() || rows.empty()) throw ParseError(where + " must be a non-empty array of rows");
  const std::size_t n = rows.size();
  const std::size_t m = rows.front().is_array() ? rows.front().size() : 0;
  Matrix out(static_cast<Index>(n), static_cast<Index>(m));
  for (std::size_t r = 0; r < n; ++r) {
    if (!rows[r].is_array() || rows[r].size() != m) throw ParseError(where + " has ragged rows");
    for (std::size_t c = 0; c < m; ++c) {
      if (!rows[r][c].is_number()) throw ParseError(where + " has a non-numeric entry");
      out(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c].get<double>();
    }
  }
  return out;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

SwitchedSystem load_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("model must be a JSON object");

  const auto d = field<long long>(j, "d");
  const auto events = field<std::vector<std::string>>(j, "events");
  const auto num_nodes = field<long long>(j, "num_nodes");
  const auto initial = field<long long>(j, "initial");
  const auto delta_rows = field<std::vector<std::vector<long long>>>(j, "delta");
  const auto gamma_raw = field<std::vector<long long>>(j, "gamma");
  if (!j.contains("matrices") || !j["matrices"].is_array()) throw ParseError("missing field 'matrices'");

  if (d < 1) throw ValidationError("d must be positive");
  if (num_nodes < 1) throw ValidationError("num_nodes must be positive");
  if (initial < 0) throw ValidationError("initial must be non-negative");
  if (delta_rows.size() != static_cast<std::size_t>(num_nodes)) {
    throw ValidationError("delta must have one row per node");
  }
  std::vector<NodeId> delta;
  for (const auto& row : delta_rows) {
    if (row.size() != events.size()) throw ValidationError("delta row length must equal number of events");
    for (long long t : row) {
      if (t < 0) throw ValidationError("delta entries must be non-negative");
      delta.push_back(static_cast<NodeId>(t));
    }
  }
  std::vector<LabelId> gamma;
  for (long long g : gamma_raw) {
    if (g < 0) throw ValidationError("gamma entries must be non-negative");
    gamma.push_back(static_cast<LabelId>(g));
  }

  SwitchedSystem sys{Fa(EventAlphabet(events), static_cast<std::size_t>(num_nodes), static_cast<NodeId>(initial),
                        std::move(delta), std::move(gamma)),
                     {},
                     static_cast<Index>(d)};
  for (std::size_t k = 0; k < j["matrices"].size(); ++k) sys.matrices.push_back(matrix_from_json(j["matrices"][k], k));

  const auto violations = validate(sys);
  if (!violations.empty()) {
    std::string msg = "invalid switched system:";
    for (const auto& v : violations) msg += " " + describe(v);
    throw ValidationError(msg);
  }
  return sys;
}

std::string save_json(const SwitchedSystem& sys) {
  json j;
  j["d"] = sys.d;
  j["events"] = sys.fa.alphabet().names();
  j["num_nodes"] = sys.fa.num_nodes();
  j["initial"] = sys.fa.initial();
  json delta = json::array();
  for (NodeId q = 0; q < sys.fa.num_nodes(); ++q) {
    json row = json::array();
    for (EventId e = 0; e < sys.fa.num_events(); ++e) row.push_back(sys.fa.next(q, e));
    delta.push_back(std::move(row));
  }
  j["delta"] = std::move(delta);
  j["gamma"] = sys.fa.gamma();
  json mats = json::array();
  for (const auto& m : sys.matrices) mats.push_back(matrix_to_json(m));
  j["matrices"] = std::move(mats);
  return j.dump(2) + "\n";
}

SwitchedSystem load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_json(buf.str());
}

void save_json_file(const SwitchedSystem& sys, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << save_json(sys);
}

std::string to_dot(const SwitchedSystem& sys) {
  const Fa& fa = sys.fa;
  std::ostringstream out;
  out << "digraph switched_system {\n";
  out << "  rankdir=LR;\n";
  out << "  __start [shape=none, label=\"\", width=0, height=0];\n";
  for (NodeId q = 0; q < fa.num_nodes(); ++q) {
    out << "  q" << q << " [shape=circle, label=\"q" << q << " / A" << fa.label(q) << "\"];\n";
  }
  out << "  __start -> q" << fa.initial() << ";\n";
  for (NodeId q = 0; q < fa.num_nodes(); ++q) {
    for (EventId e = 0; e < fa.num_events(); ++e) {
      out << "  q" << q << " -> q" << fa.next(q, e) << " [label=\"" << fa.alphabet().name(e) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace swlearn
