#include "swlearn/output_query.hpp"

namespace swlearn {

OutputObservation observe_output(ObservationOracle& obs, const Word& w) {
  const Index d = obs.dimension();
  const Matrix basis = identity(d);
  ++obs.stats().output_computations;
  if (w.empty()) {
    auto states = obs.exec_query(basis, w);
    return {basis, std::move(states.back()), {}};
  }
  auto before = obs.exec_query(basis, w.prefix(w.size() - 1));
  auto after = obs.exec_query(basis, w);
  return {std::move(before.back()), std::move(after.back()), {}};
}

OutputObservation compute_output_observation(ObservationOracle& obs, const Word& w, double pivot_tol) {
  OutputObservation o = observe_output(obs, w);
  o.a = w.empty() ? o.x_next : solve_for_A(o.x, o.x_next, pivot_tol);
  return o;
}

Matrix compute_output(ObservationOracle& obs, const Word& w, double pivot_tol) {
  return compute_output_observation(obs, w, pivot_tol).a;
}

LabelId LabelRegistry::classify(const Matrix& m) {
  std::optional<LabelId> found;
  for (std::size_t j = 0; j < canonical_.size(); ++j) {
    const Matrix& c = canonical_[j];
    if (c.rows() != m.rows() || c.cols() != m.cols()) continue;
    if (mat_approx_eq(c, m, tol_)) {
      if (found) {
        throw AmbiguousLabel("matrix is within tolerance of labels " + std::to_string(*found) + " and " +
                             std::to_string(j));
      }
      found = static_cast<LabelId>(j);
    }
  }
  if (found) return *found;
  canonical_.push_back(m);
  return static_cast<LabelId>(canonical_.size() - 1);
}

std::optional<LabelId> LabelRegistry::match_observation(const Matrix& x, const Matrix& x_next) const {
  std::optional<LabelId> found;
  for (std::size_t j = 0; j < canonical_.size(); ++j) {
    if (canonical_[j].cols() != x.rows()) continue;
    if (scaled_residual(canonical_[j], x, x_next) <= tol_) {
      if (found) {
        throw AmbiguousLabel("observation fits labels " + std::to_string(*found) + " and " + std::to_string(j));
      }
      found = static_cast<LabelId>(j);
    }
  }
  return found;
}

LabelId cached_output(ObservationOracle& obs, LabelRegistry& reg, OutputCache& cache, const Word& w) {
  if (auto it = cache.find(w); it != cache.end()) return it->second;
  const OutputObservation seen = observe_output(obs, w);
  LabelId id;
  if (auto known = reg.match_observation(seen.x, seen.x_next)) {
    id = *known;
  } else {
    const Matrix a = w.empty() ? seen.x_next : solve_for_A(seen.x, seen.x_next);
    id = reg.classify(a);
  }
  cache.emplace(w, id);
  return id;
}

}  // namespace swlearn
