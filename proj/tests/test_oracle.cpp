#include "doctest.h"
#include "fixtures.hpp"

using namespace swlearn;
using namespace swlearn::testing;

TEST_CASE("white-box observation") {
  WhiteBoxObservation obs(four_node());
  CHECK(obs.dimension() == 2);
  CHECK(obs.alphabet() == EventAlphabet({"e1", "e2"}));

  const auto states = obs.exec_query(col({0.5, 0.5}), Word{0, 1, 0, 1, 1});
  REQUIRE(states.size() == 7);
  CHECK(max_abs_diff(states.back(), col({-1.02078, -0.724035})) <= 1e-12);
  CHECK(obs.stats().io_queries == 1);

  obs.exec_query(identity(2), Word{0});
  CHECK(obs.stats().io_queries == 3);
  CHECK(obs.stats().output_computations == 0);
  CHECK(obs.stats().equivalence_queries == 0);

  SwitchedSystem broken = four_node();
  broken.matrices[0] = Matrix::Zero(2, 2);
  CHECK_THROWS_AS(WhiteBoxObservation{broken}, ValidationError);
}

TEST_CASE("white-box equivalence") {
  WhiteBoxEquivalence eq(four_node());
  CHECK_FALSE(eq.check(four_node()).has_value());

  const auto cex = eq.check(four_node_first_hypothesis());
  REQUIRE(cex.has_value());
  CHECK(cex->size() == 3);
  CHECK(*cex == Word{0, 1, 1});
  CHECK(eq.stats().equivalence_queries == 2);

  // Same automaton, one matrix perturbed beyond tolerance.
  SwitchedSystem nudged = four_node();
  nudged.matrices[2](0, 0) += 1e-3;
  const auto short_cex = eq.check(nudged);
  REQUIRE(short_cex.has_value());
  CHECK(*short_cex == Word{0});

  // Within tolerance.
  SwitchedSystem close_enough = four_node();
  close_enough.matrices[2](0, 0) += 1e-9;
  CHECK_FALSE(eq.check(close_enough).has_value());
}

TEST_CASE("bounded testing equivalence") {
  WhiteBoxObservation obs(four_node());

  SUBCASE("accepts the hidden system itself") {
    BoundedTestingEquivalence eq(obs, 6);
    CHECK_FALSE(eq.check(four_node()).has_value());
    // 2^0 + ... + 2^6 words.
    CHECK(obs.stats().output_computations == 127);
  }
  SUBCASE("finds the shortest counterexample first") {
    BoundedTestingEquivalence eq(obs, 6);
    const auto cex = eq.check(four_node_first_hypothesis());
    REQUIRE(cex.has_value());
    CHECK(*cex == Word{0, 1, 1});
  }
  SUBCASE("a bound below the shortest difference accepts") {
    BoundedTestingEquivalence eq(obs, 2);
    CHECK_FALSE(eq.check(four_node_first_hypothesis()).has_value());
    BoundedTestingEquivalence eq0(obs, 0);
    CHECK_FALSE(eq0.check(four_node_first_hypothesis()).has_value());
  }
  SUBCASE("alphabet mismatch") {
    BoundedTestingEquivalence eq(obs, 3);
    CHECK_THROWS_AS(eq.check(SwitchedSystem{Fa(EventAlphabet({"a", "b"}), 1, 0, {0, 0}, {0}), {kA1}, 2}),
                    AlphabetMismatch);
  }
}

TEST_CASE("bounded counterexamples are real and within the bound") {
  Rng rng(31);
  for (int t = 0; t < 40; ++t) {
    const SwitchedSystem hidden = random_system(small_config(rng.next(), 2 + rng.below(5), 1 + rng.below(2), 3, 2));
    const SwitchedSystem other = random_system(small_config(rng.next(), 1 + rng.below(5), hidden.fa.num_events(), 3, 2));
    WhiteBoxObservation obs(hidden);
    const std::size_t bound = 1 + rng.below(5);
    BoundedTestingEquivalence eq(obs, bound);
    const auto cex = eq.check(other);

    // Independent oracle: first word by length where the matrices differ.
    std::optional<Word> expected;
    for (const Word& w : all_words(hidden.fa.num_events(), bound)) {
      if (!mat_approx_eq(hidden.matrix_of(output_of(hidden.fa, w)), other.matrix_of(output_of(other.fa, w)), 1e-6)) {
        expected = w;
        break;
      }
    }
    CHECK(cex == expected);
    if (cex) CHECK(cex->size() <= bound);
  }
}
