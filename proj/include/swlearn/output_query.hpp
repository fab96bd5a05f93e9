#pragma once

// Output recovery from IO queries, and the bookkeeping that turns recovered
// matrices into discrete label ids.

#include <optional>
#include <unordered_map>
#include <vector>

#include "swlearn/oracle.hpp"

namespace swlearn {

/// The two observations behind one output recovery, and the solved matrix.
///   w = ε:  X = I,                             X' = last(exec(I, ε))
///   else:   X = last(exec(I, w[1..n-1])),      X' = last(exec(I, w))
/// `a` solves a X = X'.
struct OutputObservation {
  Matrix x;
  Matrix x_next;
  Matrix a;
};

/// Queries the hidden system (d columns for ε, 2d otherwise) without solving.
/// Counts one output computation.
OutputObservation observe_output(ObservationOracle& obs, const Word& w);

/// observe_output followed by the solve; throws SingularBasis when X is not a
/// basis.
OutputObservation compute_output_observation(ObservationOracle& obs, const Word& w,
                                             double pivot_tol = kPivotTolerance);

/// The matrix labelling the last node of the hidden run of w.
Matrix compute_output(ObservationOracle& obs, const Word& w, double pivot_tol = kPivotTolerance);

/// Recovered matrices seen so far, each with a dense id. The first matrix
/// seen for a label becomes its canonical representative.
class LabelRegistry {
 public:
  explicit LabelRegistry(double tol = kLabelTolerance) : tol_(tol) {}

  /// Id of the canonical matrix within tol of m; registers m when there is
  /// none. Throws AmbiguousLabel when two canonical matrices are within tol.
  LabelId classify(const Matrix& m);

  /// Id of the canonical matrix `a` with scaled_residual(a, X, X') <= tol, or
  /// nothing. Throws AmbiguousLabel when several qualify.
  std::optional<LabelId> match_observation(const Matrix& x, const Matrix& x_next) const;

  std::size_t size() const { return canonical_.size(); }
  const Matrix& matrix(LabelId id) const { return canonical_.at(id); }
  const std::vector<Matrix>& matrices() const { return canonical_; }
  double tol() const { return tol_; }

 private:
  std::vector<Matrix> canonical_;
  double tol_;
};

using OutputCache = std::unordered_map<Word, LabelId, WordHash>;

/// Label id of Output(w), memoised by exact word.
///
/// Known labels are recognised by the residual of the observation pair, so a
/// long word whose X is badly conditioned is still classified correctly; the
/// linear solve only runs when no registered label fits.
LabelId cached_output(ObservationOracle& obs, LabelRegistry& reg, OutputCache& cache, const Word& w);

/// Bundles an oracle with the registry and cache one learner owns.
class OutputQuerier {
 public:
  explicit OutputQuerier(ObservationOracle& obs, double tol = kLabelTolerance) : obs_(obs), registry_(tol) {}

  LabelId operator()(const Word& w) { return cached_output(obs_, registry_, cache_, w); }

  ObservationOracle& oracle() { return obs_; }
  const LabelRegistry& registry() const { return registry_; }
  const OutputCache& cache() const { return cache_; }
  void clear_cache() { cache_.clear(); }

 private:
  ObservationOracle& obs_;
  LabelRegistry registry_;
  OutputCache cache_;
};

}  // namespace swlearn
