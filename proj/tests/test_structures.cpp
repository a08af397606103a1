#include <set>

#include "csgame/errors.hpp"
#include "csgame/structures.hpp"
#include "doctest.h"

using namespace csgame;

namespace {

Family single(const StructurePtr& s, Assignment a) { return Family(s, a.domain(), {a}); }

}  // namespace

TEST_CASE("linear order A_4") {
  const Structure a = make_linear_order(4, true);
  CHECK(a.size() == 5);
  CHECK(a.constant("min") == 0);
  CHECK(a.constant("max") == 4);
  std::set<std::vector<Element>> succ(a.relation("succ")->tuples().begin(), a.relation("succ")->tuples().end());
  CHECK(succ == std::set<std::vector<Element>>{{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  CHECK(a.is_linear_order());
}

TEST_CASE("degenerate order A_0") {
  const Structure a = make_linear_order(0, true);
  CHECK(a.size() == 1);
  CHECK(a.constant("min") == a.constant("max"));
  CHECK(a.relation("succ")->tuples().empty());
}

TEST_CASE("A_2 order relation is every pair a<b") {
  const Structure a = make_linear_order(2, false);
  std::set<std::vector<Element>> want;
  for (int i = 0; i <= 2; ++i)
    for (int j = i + 1; j <= 2; ++j) want.insert({i, j});
  std::set<std::vector<Element>> got(a.relation("<")->tuples().begin(), a.relation("<")->tuples().end());
  CHECK(got == want);
  CHECK(a.relation("succ") == nullptr);
}

TEST_CASE("structure contract errors") {
  Structure s(2);
  s.add_relation("R", 1);
  CHECK_THROWS_AS(s.add_relation("R", 2), ContractError);
  CHECK_THROWS_AS(s.add_tuple("R", {2}), ContractError);
  CHECK_THROWS_AS(s.add_tuple("R", {0, 1}), ContractError);
  s.add_tuple("S", {0, 1});  // declares S with arity 2
  CHECK(s.relation("S")->arity() == 2);
  CHECK_THROWS_AS(s.set_constant("c", 5), ContractError);
}

TEST_CASE("change substitutes and deduplicates") {
  const auto lo = linear_order(2);
  const Family a = single(lo, Assignment().with(0, 1));
  const std::vector<Element> two{2};
  const Family r = change(a, two, 1);
  REQUIRE(r.size() == 1);
  CHECK(r.members()[0] == Assignment().with(0, 1).with(1, 2));

  const std::vector<Element> same{1};
  CHECK(change(a, same, 0) == a);

  const Family pair(lo, 0b1, {Assignment().with(0, 0), Assignment().with(0, 2)});
  const std::vector<Element> both{1, 1};
  CHECK(change(pair, both, 0).size() == 1);
}

TEST_CASE("multiply") {
  const auto lo = linear_order(2);
  CHECK(multiply(single(lo, Assignment().with(0, 1)), 1).size() == 3);
  CHECK(multiply(Family::empty(lo, 0b1), 1).empty());
  const auto one = linear_order(0);
  const Family a = single(one, Assignment().with(0, 0));
  CHECK(multiply(a, 0) == a);
}

TEST_CASE("k_change") {
  const auto lo = linear_order(2);
  const Family a = single(lo, Assignment().with(0, 0));
  const KChoiceFunction f(a, {{1, 2}});
  const Family r = k_change(a, f, 2);
  REQUIRE(r.size() == 2);
  CHECK(r.members()[0].get(2) == 1);
  CHECK(r.members()[1].get(2) == 2);

  const KChoiceFunction g(a, {{2}});
  const std::vector<Element> two{2};
  CHECK(k_change(a, g, 1) == change(a, two, 1));

  const auto tiny = linear_order(0);
  const Family b = single(tiny, Assignment().with(0, 0));
  CHECK_THROWS_AS(KChoiceFunction(b, {{0, 0}}), ContractError);
  CHECK_THROWS_AS(KChoiceFunction(b, {{0, 1}}), ContractError);
}

TEST_CASE("k_multiply in exclusion form") {
  const auto lo = linear_order(2);
  const Family a = single(lo, Assignment().with(0, 0));
  CHECK(k_multiply(a, 1, 1, {{}}) == multiply(a, 1));
  const Family r = k_multiply(a, 1, 2, {{1}});
  REQUIRE(r.size() == 2);
  CHECK(r.members()[0].get(1) == 0);
  CHECK(r.members()[1].get(1) == 2);
  CHECK_THROWS_AS(k_multiply(a, 1, 2, {{0, 1}}), ContractError);

  const auto tiny = linear_order(0);
  CHECK(k_multiply(Family::sentence(tiny), 0, 2, {{}}).empty());
}

TEST_CASE("naive k-multiplication") {
  const auto lo = linear_order(2);
  const Family s = Family::sentence(lo);
  // k = 1: only multiply
  const auto k1 = enumerate_k_multiplications_naive(s, 0, 1);
  REQUIRE(k1.size() == 1);
  CHECK(k1[0] == multiply(s, 0));

  // |U| = 3, k = 2: exactly the extension sets missing at most one element
  const auto k2 = enumerate_k_multiplications_naive(s, 0, 2);
  std::set<std::set<Element>> got;
  for (const Family& f : k2) {
    std::set<Element> vals;
    for (const Assignment& a : f.members()) vals.insert(a.get(0));
    got.insert(vals);
  }
  std::set<std::set<Element>> want;
  for (int mask = 0; mask < 8; ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) < 2) continue;
    std::set<Element> t;
    for (int e = 0; e < 3; ++e)
      if (mask >> e & 1) t.insert(e);
    want.insert(t);
  }
  CHECK(got == want);

  const auto empty = enumerate_k_multiplications_naive(Family::empty(lo, 0), 0, 2);
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].empty());
}
