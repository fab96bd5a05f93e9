#include "swlearn/oracle.hpp"

#include "swlearn/output_query.hpp"

namespace swlearn {

namespace {

SwitchedSystem checked(SwitchedSystem sys) {
  const auto violations = validate(sys);
  if (!violations.empty()) {
    std::string msg = "hidden system does not validate:";
    for (const auto& v : violations) msg += " " + describe(v);
    throw ValidationError(msg);
  }
  return sys;
}

// Next word of the same length in event-index order; false after the last.
bool advance(std::vector<EventId>& digits, EventId base) {
  for (std::size_t pos = digits.size(); pos-- > 0;) {
    if (++digits[pos] < base) return true;
    digits[pos] = 0;
  }
  return false;
}

}  // namespace

WhiteBoxObservation::WhiteBoxObservation(SwitchedSystem hidden) : hidden_(checked(std::move(hidden))) {}

std::vector<Matrix> WhiteBoxObservation::exec_query(const Matrix& x0, const Word& w) {
  auto states = exec(hidden_, x0, w);
  stats_.io_queries += static_cast<std::uint64_t>(x0.cols());
  return states;
}

WhiteBoxEquivalence::WhiteBoxEquivalence(SwitchedSystem hidden, double tol)
    : hidden_(checked(std::move(hidden))), tol_(tol) {}

std::optional<Word> WhiteBoxEquivalence::check(const SwitchedSystem& hypothesis) {
  ++stats_.equivalence_queries;
  return equivalent_systems(hidden_, hypothesis, tol_);
}

BoundedTestingEquivalence::BoundedTestingEquivalence(ObservationOracle& obs, std::size_t max_length, double tol)
    : obs_(obs), max_length_(max_length), tol_(tol) {}

std::optional<Word> BoundedTestingEquivalence::check(const SwitchedSystem& hypothesis) {
  ++stats_.equivalence_queries;
  if (hypothesis.fa.alphabet() != obs_.alphabet()) {
    throw AlphabetMismatch("hypothesis alphabet differs from the observed system");
  }
  const auto events = static_cast<EventId>(obs_.alphabet().size());
  for (std::size_t length = 0; length <= max_length_; ++length) {
    std::vector<EventId> digits(length, 0);
    do {
      const Word w{digits};
      const OutputObservation seen = observe_output(obs_, w);
      const Matrix& predicted = hypothesis.matrix_of(output_of(hypothesis.fa, w));
      if (!(scaled_residual(predicted, seen.x, seen.x_next) <= tol_)) return w;
    } while (advance(digits, events));
  }
  return std::nullopt;
}

WhiteBoxObservation white_box_observation(const SwitchedSystem& hidden) { return WhiteBoxObservation(hidden); }

WhiteBoxEquivalence white_box_equivalence(const SwitchedSystem& hidden, double tol) {
  return WhiteBoxEquivalence(hidden, tol);
}

BoundedTestingEquivalence bounded_testing_equivalence(ObservationOracle& obs, std::size_t max_length, double tol) {
  return BoundedTestingEquivalence(obs, max_length, tol);
}

}  // namespace swlearn
