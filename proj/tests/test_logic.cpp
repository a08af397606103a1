#include <random>

#include "csgame/errors.hpp"
#include "csgame/logic.hpp"
#include "csgame/separators.hpp"
#include "doctest.h"

using namespace csgame;

namespace {

StructurePtr colours(const std::vector<std::pair<bool, bool>>& c) {
  auto s = std::make_shared<Structure>(static_cast<int>(c.size()));
  s->add_relation("red", 1);
  s->add_relation("blue", 1);
  for (int i = 0; i < static_cast<int>(c.size()); ++i) {
    if (c[static_cast<std::size_t>(i)].first) s->add_tuple("red", {i});
    if (c[static_cast<std::size_t>(i)].second) s->add_tuple("blue", {i});
  }
  return s;
}

}  // namespace

TEST_CASE("parse counting conjunction") {
  const FormulaPtr f = parse("E>=2 x. (red(x) & blue(x))");
  REQUIRE(f->kind == Kind::Exists);
  CHECK(f->k == 2);
  CHECK(f->var == 0);
  REQUIRE(f->left->kind == Kind::And);
  CHECK(f->left->left->relation == "red");
  CHECK(f->left->right->relation == "blue");
  CHECK(same(*f, *exists(2, 0, conj(atom("red", {Term::variable(0)}), atom("blue", {Term::variable(0)})))));
}

TEST_CASE("parse atoms and negation") {
  const FormulaPtr f = parse("x=x");
  CHECK(f->kind == Kind::Atom);
  CHECK(f->relation == "=");
  CHECK(f->args == std::vector<Term>{Term::variable(0), Term::variable(0)});
  const FormulaPtr g = parse("~(min<max)");
  REQUIRE(g->kind == Kind::Not);
  CHECK(g->left->relation == "<");
  CHECK(g->left->args == std::vector<Term>{Term::min(), Term::max()});
}

TEST_CASE("parse errors and fragment checks") {
  CHECK_THROWS_AS(parse("E>=0 x. x=x"), ParseError);
  CHECK_THROWS_AS(parse("(x=x"), ParseError);
  CHECK_THROWS_AS(parse("x=x)"), ParseError);
  CHECK_THROWS_AS(parse("E>=2 y. x<y", FragmentSpec{2, 1}), ParseError);
  CHECK_THROWS_AS(parse("E z. x<z", FragmentSpec{2, 1}), ParseError);
  CHECK_NOTHROW(parse("E>=2 y. x<y", FragmentSpec{2, 2}));
}

TEST_CASE("printer round trip") {
  for (const char* text : {"E>=2 x. (red(x) & blue(x))", "~(x<y)", "(~(x<y) | succ(x,y))", "A>=3 z. (z=max | E y. y<z)",
                           "~E x. E>=2 y. ((y<x) & (y=y))"}) {
    const FormulaPtr f = parse(text);
    CHECK(same(*parse(to_string(*f)), *f));
  }
}

TEST_CASE("size") {
  CHECK(size(*parse("x=x")) == 1);
  CHECK(size(*parse("E>=2 x. (red(x) & blue(x))")) == 3);
  CHECK(size(*parse("(~(x<y) | succ(x,y))")) == 3);
}

TEST_CASE("metrics") {
  const Metrics m = metrics(*parse("E>=2 x. (red(x) & blue(x))"));
  CHECK(m.quantifier_rank == 1);
  CHECK(m.counting_rank == 2);
  CHECK(m.variables == var_bit(0));
  const Metrics a = metrics(*parse("x=x"));
  CHECK(a.quantifier_rank == 0);
  CHECK(a.counting_rank == 0);
  CHECK(a.variables == var_bit(0));
  CHECK(metrics(*upper_bound_formula(4, 2)).counting_rank == 2);
  CHECK(free_variables(*parse("E y. x<y")) == var_bit(0));
}

TEST_CASE("evaluation") {
  const auto a = colours({{true, true}, {true, true}, {false, false}});
  const FormulaPtr f = parse("E>=2 x. (red(x) & blue(x))");
  CHECK(eval(*a, {}, *f));
  CHECK(eval(*colours({{false, false}}), {}, *parse("E x. x=x")));
  for (int n = 1; n <= 6; ++n) CHECK(eval(*linear_order(n), {}, *parse("A>=2 x. x<max")));
  CHECK(eval(*linear_order(0), {}, *parse("A>=2 x. x<max")));  // one falsifier is fewer than two
  CHECK_THROWS_AS(eval(*a, {}, *parse("red(x)")), EvaluationError);
  CHECK_THROWS_AS(eval(*a, Assignment().with(0, 0), *parse("x<max")), EvaluationError);
}

TEST_CASE("eval agrees with the naive evaluator") {
  std::mt19937 rng(7);
  Vocabulary v;
  v.relations["<"] = 2;
  v.relations["succ"] = 2;
  v.constants = {"min", "max"};
  const auto by_size = enumerate_formulas_by_size({2, 2}, v, 3);
  for (int n = 0; n <= 4; ++n) {
    const auto s = linear_order(n);
    for (std::size_t sz = 1; sz <= 3; ++sz) {
      for (const FormulaPtr& f : by_size[sz]) {
        if (rng() % 8 != 0) continue;
        const Assignment alpha = Assignment().with(0, static_cast<Element>(rng() % (n + 1))).with(1, static_cast<Element>(rng() % (n + 1)));
        CHECK(eval(*s, alpha, *f) == eval_naive(*s, alpha, *f));
      }
    }
  }
}

TEST_CASE("distinguishes") {
  const auto a = colours({{true, true}, {true, true}, {false, false}});
  const auto b = colours({{false, true}, {true, true}, {true, false}});
  const FormulaPtr f = parse("E>=2 x. (red(x) & blue(x))");
  CHECK(distinguishes(*f, Family::sentence(a), Family::sentence(b)));
  CHECK_FALSE(distinguishes(*f, Family::sentence(a), Family::sentence(a)));
  CHECK_FALSE(distinguishes(*parse("~E>=2 x. (red(x) & blue(x))"), Family::sentence(a), Family::sentence(a)));
  CHECK(distinguishes(*f, Family::empty(a, 0), Family::empty(b, 0)));
  CHECK_THROWS_AS(distinguishes(*f, Family::sentence(a), Family::empty(b, 1)), ContractError);
}

TEST_CASE("enumeration") {
  Vocabulary v;
  v.relations["R"] = 1;
  const auto one = enumerate_formulas({1, 1}, v, 1);
  CHECK(one.size() == 2);  // x=x, R(x)
  for (int t = 1; t <= 2; ++t) {
    const std::size_t atoms = 2;
    const std::size_t negations = atoms;
    const std::size_t quantifiers = 2 * static_cast<std::size_t>(t) * atoms;
    const std::size_t binary = 2 * atoms * atoms;
    const auto all = enumerate_formulas({1, t}, v, 2);
    CHECK(all.size() == atoms + negations + quantifiers + binary);
  }
  const auto by_size = enumerate_formulas_by_size({1, 2}, v, 2);
  bool saw_neg = false, saw_e2 = false;
  for (const FormulaPtr& f : by_size[2]) {
    saw_neg = saw_neg || to_string(*f) == "~R(x)";
    saw_e2 = saw_e2 || to_string(*f) == "E>=2 x. R(x)";
  }
  CHECK(saw_neg);
  CHECK(saw_e2);
}

TEST_CASE("atomic distinguisher") {
  const auto lo = linear_order(2);
  const Family a(lo, 0b11, {Assignment().with(0, 1).with(1, 2)});
  const Family b(lo, 0b11, {Assignment().with(0, 2).with(1, 1)});
  const auto d = atomic_distinguisher(a, b);
  REQUIRE(d);
  CHECK(distinguishes(**d, a, b));
  CHECK(to_string(**d) == "x<y");
  CHECK_FALSE(atomic_distinguisher(a, a));
  const auto vac = atomic_distinguisher(Family::sentence(lo), Family::empty(lo, 0));
  REQUIRE(vac);
  CHECK(to_string(**vac) == "min=min");
}
