#include <random>

#include "csgame/errors.hpp"
#include "csgame/separators.hpp"
#include "doctest.h"

using namespace csgame;

namespace {

Separator with(std::initializer_list<std::pair<std::pair<Point, Point>, std::int64_t>> entries) {
  Separator d;
  for (const auto& [p, v] : entries) d.at(p.first, p.second) = v;
  return d;
}

Family interp(const StructurePtr& s, Element x, Element y, Element z) {
  return Family(s, 0b111, {Assignment().with(0, x).with(1, y).with(2, z)});
}

Family random_family(std::mt19937& rng, const StructurePtr& s, int members) {
  std::vector<Assignment> out;
  for (int i = 0; i < members; ++i) {
    Assignment a;
    for (int v = 0; v < 3; ++v) a = a.with(v, static_cast<Element>(rng() % static_cast<unsigned>(s->size())));
    out.push_back(a);
  }
  return Family(s, 0b111, out);
}

}  // namespace

TEST_CASE("lt_type") {
  CHECK(std::string(lt_type(3, 3)) == "=");
  CHECK(std::string(lt_type(1, 4)) == "<");
  CHECK(std::string(lt_type(4, 1)) == ">");
}

TEST_CASE("pair names") {
  CHECK(pair_name(0) == "min-max");
  CHECK(pair_index(Point::Y, Point::X) == pair_index(Point::X, Point::Y));
  for (int i = 0; i < kSeparatorPairs; ++i) CHECK(pair_index(pair_points(i).first, pair_points(i).second) == i);
}

TEST_CASE("is_separator") {
  for (int n = 1; n <= 6; ++n) {
    const Family a = zero_root(linear_order(n, false));
    const Family b = zero_root(linear_order(n + 2, false));
    CHECK(is_separator(root_separator(n), a, b));
  }
  const auto lo = linear_order(12, false);
  const Family i = interp(lo, 2, 4, 6);
  Separator big;
  big.value.fill(20);
  CHECK_FALSE(is_separator(big, i, i));
  CHECK_FALSE(is_separator(Separator{}, interp(lo, 1, 6, 6), interp(lo, 1, 7, 7)));
  CHECK(is_separator(with({{{Point::X, Point::Y}, 5}}), interp(lo, 1, 6, 6), interp(lo, 1, 7, 7)));
  const Family partial(lo, 0b11, {Assignment().with(0, 1).with(1, 1)});
  CHECK_THROWS_AS(is_separator(Separator{}, partial, partial), ContractError);
}

TEST_CASE("weights") {
  const WeightParts root = weight_parts(root_separator(7));
  CHECK(root.border == 7);
  CHECK(root.centre == 0);
  CHECK(root.squared() == 7);
  CHECK(weight_parts(Separator{}).squared() == 0);
  const WeightParts two = weight_parts(with({{{Point::X, Point::Y}, 1}, {{Point::X, Point::Z}, 1}}));
  CHECK(two.centre == 2);
  CHECK(two.border == 0);
  CHECK(two.weight() == doctest::Approx(2.0));
  CHECK(weight_le_sum(9, 4, 1));        // 3 <= 2 + 1
  CHECK_FALSE(weight_le_sum(10, 4, 1));
  CHECK(weight_le_plus(16, 4, 2));     // 4 <= 2 + 2
  CHECK_FALSE(weight_le_plus(17, 4, 2));
}

TEST_CASE("minimal separators") {
  for (int n = 0; n <= 6; ++n) {
    const auto best = minimal_separator(zero_root(linear_order(n, false)), zero_root(linear_order(n + 1, false)));
    REQUIRE(best);
    CHECK(best->parts.squared() == n);
  }
  const auto lo = linear_order(5, false);
  const Family a = interp(lo, 1, 3, 0);
  const Family b = interp(lo, 3, 1, 0);
  const auto leaf = minimal_separator(a, b);  // separated by x<y
  REQUIRE(leaf);
  CHECK(leaf->parts.squared() <= 1);
  CHECK_FALSE(minimal_separator(a, a));
}

TEST_CASE("minimal separator matches exhaustive search") {
  std::mt19937 rng(3);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int na = 1 + static_cast<int>(rng() % 6);
    const int nb = 1 + static_cast<int>(rng() % 6);
    const Family a = random_family(rng, linear_order(na, false), 1 + static_cast<int>(rng() % 2));
    const Family b = random_family(rng, linear_order(nb, false), 1 + static_cast<int>(rng() % 2));
    const auto fast = minimal_separator(a, b);
    const auto slow = minimal_separator_exhaustive(a, b, std::max(na, nb));
    REQUIRE(fast.has_value() == slow.has_value());
    if (!fast) continue;
    CHECK(fast->parts.squared() == slow->parts.squared());
    CHECK(fast->separator == slow->separator);
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("sum separator") {
  const Separator d1 = with({{{Point::Min, Point::X}, 1}});
  CHECK(sum_separator(d1, Separator{}) == d1);
  CHECK(sum_separator(d1, d1)(Point::Min, Point::X) == 2);
  std::mt19937 rng(11);
  for (int i = 0; i < 2000; ++i) {
    Separator a, b;
    for (auto& v : a.value) v = rng() % 6;
    for (auto& v : b.value) v = rng() % 6;
    CHECK(weight_le_sum(weight_parts(sum_separator(a, b)).squared(), weight_parts(a).squared(),
                        weight_parts(b).squared()));
  }
}

TEST_CASE("quantifier step separator") {
  CHECK(quantifier_step_separator(Separator{}, Point::Z, 1) == Separator{});
  const Separator d1 = with({{{Point::Min, Point::Z}, 2}, {{Point::Z, Point::Max}, 3}, {{Point::Min, Point::Max}, 4}});
  const Separator d = quantifier_step_separator(d1, Point::Z, 2);
  CHECK(d(Point::Min, Point::Max) == 6);
  CHECK(d(Point::Min, Point::Z) == 0);
  CHECK(d(Point::X, Point::Z) == 0);
  std::mt19937 rng(5);
  for (int i = 0; i < 3000; ++i) {
    Separator a;
    for (auto& v : a.value) v = rng() % 7;
    const int k = 1 + static_cast<int>(rng() % 3);
    const Point u = static_cast<Point>(2 + rng() % 3);
    CHECK(weight_le_plus(weight_parts(quantifier_step_separator(a, u, k)).squared(), weight_parts(a).squared(), k));
  }
}

TEST_CASE("gaps") {
  const auto lo = linear_order(10, false);
  std::array<Element, 5> pts{0, 10, 3, 7, 0};
  Separator d1;
  for (Point u : {Point::Min, Point::Max, Point::X, Point::Y}) d1.at(u, Point::Z) = 1;
  const auto g = gaps(pts, d1);
  CHECK(g[static_cast<int>(GapSelector::XY)] == std::vector<Element>{5});
  CHECK(g[static_cast<int>(GapSelector::MinX)].empty());
  CHECK(gap_variables(pts, GapSelector::XY, d1) == std::pair{Point::X, Point::Y});
  // gap of one element: 1 + 1 + 1 + 1 = d(x, y)
  CHECK(gap_inequality_literal(pts, GapSelector::XY, d1, Point::X, Point::Y) == false);

  const std::array<Element, 5> zero{0, 10, 0, 0, 0};
  CHECK(gaps(zero, Separator{})[static_cast<int>(GapSelector::MinX)].empty());
  std::array<Element, 5> swapped{0, 10, 7, 3, 0};
  CHECK_THROWS_AS(gaps(swapped, d1), ContractError);
}

TEST_CASE("gap variables from the min-ball") {
  const std::array<Element, 5> pts{0, 20, 3, 15, 0};
  const Separator d1 = with({{{Point::Min, Point::Z}, 8},
                             {{Point::X, Point::Z}, 1},
                             {{Point::Y, Point::Z}, 2},
                             {{Point::Max, Point::Z}, 1}});
  const auto g = gaps(pts, d1)[static_cast<int>(GapSelector::XY)];
  CHECK(g == std::vector<Element>{9, 10, 11, 12});
  const auto vars = gap_variables(pts, GapSelector::XY, d1);
  CHECK(vars == std::pair{Point::Min, Point::Y});
  // nonempty gap: 4 + 8 + 2 + 1 equals d(min, y)
  CHECK(static_cast<long long>(g.size()) + 8 + 2 + 1 == 15);
}

TEST_CASE("upper bound formula") {
  CHECK(size(*upper_bound_formula(2, 1)) == 9);
  CHECK(size(*upper_bound_formula(1, 2)) == 5);
  CHECK(size(*upper_bound_formula(0, 3)) == 5);
  for (int n = 0; n <= 6; ++n) {
    const FormulaPtr f = upper_bound_formula(n, 2);
    CHECK(eval(*linear_order(n), {}, *f));
    CHECK_FALSE(eval(*linear_order(n + 1), {}, *f));
  }
}

TEST_CASE("syntax-tree separator checker") {
  const FormulaPtr atom_f = parse("x=min");
  const auto lo = linear_order(4, false);
  const Family c = interp(lo, 0, 1, 1);
  const Family d = interp(lo, 2, 1, 1);
  const Lemma5Report leaf = verify_lemma5(formula_to_tree(atom_f, c, d), 1);
  REQUIRE(leaf.rows.size() == 1);
  CHECK(leaf.rows[0].rule == "leaf");
  CHECK(leaf.violations == 0);

  const Lemma5Report negated = verify_lemma5(formula_to_tree(parse("~x=min"), d, c), 1);
  REQUIRE(negated.rows.size() == 2);
  CHECK(negated.violations == 0);

  for (int n = 0; n <= 5; ++n) {
    const Family ra = zero_root(linear_order(n, false));
    const Family rb = zero_root(linear_order(n + 1, false));
    const FormulaPtr phi = upper_bound_formula(n, 1);
    CHECK(verify_lemma5(formula_to_tree(phi, ra, rb), 1).violations == 0);
    CHECK(tree_size_bound(*phi, ra, rb, 1));
  }
}
