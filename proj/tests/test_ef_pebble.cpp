#include <set>

#include "csgame/ef_pebble.hpp"
#include "csgame/errors.hpp"
#include "csgame/logic.hpp"
#include "doctest.h"

using namespace csgame;

TEST_CASE("partial isomorphism") {
  const Structure a = make_linear_order(3, true);
  const Structure b = make_linear_order(4, true);
  CHECK(partial_isomorphism(a, b, {1}, {1}));
  CHECK_FALSE(partial_isomorphism(a, b, {3}, {3}));  // max vs inner element
  CHECK_FALSE(partial_isomorphism(a, b, {1, 1}, {1, 2}));
  CHECK(partial_isomorphism(a, b, {kUnassigned, 0}, {kUnassigned, 0}));
}

TEST_CASE("identical structures: Duplicator") {
  const Structure a = make_linear_order(3, true);
  for (int r = 0; r <= 3; ++r) CHECK(duplicator_wins_exhaustive(a, a, r, 2, 2));
}

TEST_CASE("A_1 vs A_2 with three rounds: Spoiler") {
  const Structure a = make_linear_order(1, true);
  const Structure b = make_linear_order(2, true);
  CHECK_FALSE(duplicator_wins_exhaustive(a, b, 3, 2, 1));
  // a sentence of quantifier rank <= 3 separating them exists
  bool found = false;
  const auto by_size = enumerate_formulas_by_size({2, 1}, a.vocabulary(), 3);
  for (std::size_t sz = 1; sz <= 3 && !found; ++sz) {
    for (const FormulaPtr& f : by_size[sz]) {
      if (free_variables(*f) == 0 && eval(a, {}, *f) != eval(b, {}, *f)) {
        found = true;
        break;
      }
    }
  }
  CHECK(found);
}

TEST_CASE("A_4 vs A_5 over < survive two rounds") {
  const Structure a = make_linear_order(4, false);
  const Structure b = make_linear_order(5, false);
  CHECK(duplicator_wins_exhaustive(a, b, 2, 3, 1, EfLimits{6}));
  CHECK_THROWS_AS(duplicator_wins_exhaustive(a, b, 2, 3, 1), ResourceLimitError);
}

TEST_CASE("linear strategy: near-min pick copies the distance") {
  const PebbleState s = PebbleState::initial(2);
  const LinearResponse r = duplicator_linear_move(s, 4, 9, Side::Left, {2}, 0, 2, 1);
  CHECK(r.response == std::vector<Element>{2});
  CHECK(r.reply == std::vector<Element>{2});
}

TEST_CASE("linear strategy: mirrored orders answer with the same elements") {
  const PebbleState s = PebbleState::initial(2);
  for (Element e = 0; e <= 9; ++e) {
    const LinearResponse r = duplicator_linear_move(s, 9, 9, Side::Right, {e}, 1, 2, 2);
    CHECK(r.response == std::vector<Element>{e});
  }
}

TEST_CASE("linear strategy: far picks stay far and distinct") {
  const int k = 2, t = 2;
  const long long next = linear_threshold(k, 1, t);
  const PebbleState s = PebbleState::initial(2);
  const LinearResponse r = duplicator_linear_move(s, 20, 30, Side::Left, {9, 11}, 0, k, t);
  REQUIRE(r.response.size() == 2);
  CHECK(r.response[0] != r.response[1]);
  for (Element e : r.response) {
    CHECK(e >= next);
    CHECK(e <= 30 - next);
  }
}

TEST_CASE("linear strategy preconditions") {
  const PebbleState s = PebbleState::initial(2);
  CHECK_THROWS_AS(duplicator_linear_move(s, 3, 9, Side::Left, {1}, 0, 2, 1), ContractError);
  CHECK_THROWS_AS(duplicator_linear_move(s, 9, 9, Side::Left, {1, 2}, 0, 2, 1), ContractError);
  CHECK_THROWS_AS(duplicator_linear_move(s, 9, 9, Side::Left, {1, 1}, 0, 2, 2), ContractError);
  CHECK_THROWS_AS(duplicator_linear_move(s, 9, 9, Side::Left, {10}, 0, 2, 2), ContractError);
}

TEST_CASE("invariants") {
  CHECK(check_invariants(PebbleState::initial(2), 4, 7, 0, 2, 1));
  const PebbleState bad = PebbleState::initial(2).place(0, 1, 2);
  CHECK_FALSE(check_invariants(bad, 9, 9, 1, 2, 1));
  CHECK(linear_threshold(3, 1, 2) == 9);
}

TEST_CASE("random games keep the invariants") {
  for (unsigned seed = 0; seed < 50; ++seed) {
    const auto log = play_linear_game(27 + static_cast<int>(seed % 5), 30, 3, 2, 3, seed);
    CHECK(log.size() == 3);
    for (const TranscriptEntry& e : log) CHECK(e.invariants);
  }
}

TEST_CASE("exhaustive strategy check at t=1, k=2") {
  for (int a = 4; a <= 7; ++a) {
    for (int b = 4; b <= 7; ++b) CHECK(verify_linear_strategy(a, b, 2, 1, 2).ok);
  }
}
