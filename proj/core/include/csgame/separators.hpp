#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csgame/game.hpp"
#include "csgame/logic.hpp"
#include "csgame/structures.hpp"

namespace csgame {

// Points of a separator. x, y, z are the variables 0, 1, 2.
enum class Point { Min = 0, Max = 1, X = 2, Y = 3, Z = 4 };
const char* point_name(Point p);

inline constexpr int kSeparatorPairs = 10;
// Pair order: min-max, min-x, min-y, min-z, max-x, max-y, max-z, x-y, x-z, y-z.
int pair_index(Point a, Point b);
std::pair<Point, Point> pair_points(int index);
std::string pair_name(int index);

struct Separator {
  std::array<std::int64_t, kSeparatorPairs> value{};

  std::int64_t operator()(Point a, Point b) const { return value[static_cast<std::size_t>(pair_index(a, b))]; }
  std::int64_t& at(Point a, Point b) { return value[static_cast<std::size_t>(pair_index(a, b))]; }
  bool operator==(const Separator&) const = default;
  auto operator<=>(const Separator&) const = default;
};

// "=", "<" or ">".
const char* lt_type(Element a, Element b);

// Positions of min, max, x, y, z. ContractError unless x, y, z are assigned
// and the structure has min and max.
std::array<Element, 5> points_of(const Structure& s, const Assignment& a);

bool is_separator(const Separator& d, const Family& a, const Family& b);

struct WeightParts {
  std::int64_t border = 0;
  std::int64_t centre = 0;
  std::int64_t squared() const { return centre * centre + border; }
  double weight() const;
};
WeightParts weight_parts(const Separator& d);

// Exact comparisons on squared weights.
bool weight_le_sum(std::int64_t w2, std::int64_t a2, std::int64_t b2);  // w <= a + b
bool weight_le_plus(std::int64_t w2, std::int64_t a2, std::int64_t t);  // w <= a + t

struct SeparatorSearchLimits {
  std::size_t max_nodes = 2'000'000;
};
struct MinimalSeparator {
  Separator separator;
  WeightParts parts;
};
// Minimum weight, ties broken by the lexicographically smallest vector.
// nullopt when no separator exists; ResourceLimitError past the node limit.
std::optional<MinimalSeparator> minimal_separator(const Family& a, const Family& b,
                                                  SeparatorSearchLimits limits = {});
// Every delta with entries in 0..bound. Test oracle.
std::optional<MinimalSeparator> minimal_separator_exhaustive(const Family& a, const Family& b, std::int64_t bound);

Separator sum_separator(const Separator& a, const Separator& b);
Separator quantifier_step_separator(const Separator& d1, Point u, int k);

// Root pair of the lower bound: sentence structures A_n, A_m with x, y, z at 0.
Family zero_root(const StructurePtr& order);
Separator root_separator(int n);

struct Lemma5Row {
  std::string path;
  std::string label;  // syntax label
  WeightParts parts;
  std::int64_t bound_squared_lhs = 0;  // informative only
  std::string rule;  // leaf | binary | unary
  bool pass = true;
};
struct Lemma5Report {
  std::vector<Lemma5Row> rows;
  std::size_t violations = 0;
  bool complete = true;  // false when a separator search hit its limit
};
Lemma5Report verify_lemma5(const StrategyTree& tree, int t, SeparatorSearchLimits limits = {});

// size(phi) >= w(delta_root) / t with delta_root a minimal separator of (a, b).
bool tree_size_bound(const Formula& phi, const Family& a, const Family& b, int t,
                     SeparatorSearchLimits limits = {});

// Gaps of a linear-order interpretation w.r.t. delta1; x <= y is required
// (callers swap roles first).
enum class GapSelector { MinX, XY, YMax };
const char* selector_name(GapSelector s);

struct GapSpec {
  GapSelector selector = GapSelector::MinX;
  std::vector<Element> elements;
  std::pair<Point, Point> variables{Point::Min, Point::X};
};

// Gap sets for all three selectors. points = positions of min, max, x, y (z unused).
std::array<std::vector<Element>, 3> gaps(const std::array<Element, 5>& points, const Separator& d1);
// Gap variables: the smallest pair (order min < x < y < max) among the
// candidates with |Gap| + d1({z,v}) + d1({z,v'}) + 1 >= d(v, v').
// ContractError when none qualifies.
std::pair<Point, Point> gap_variables(const std::array<Element, 5>& points, GapSelector selector,
                                      const Separator& d1);
// The inequality exactly as printed (radius of x in every clause, no +1).
bool gap_inequality_literal(const std::array<Element, 5>& points, GapSelector selector, const Separator& d1,
                            Point v, Point v2);
std::vector<std::pair<Point, Point>> gap_candidates(GapSelector selector);

// not E x. phi_{n+1}(x) with phi_0(v) = (v=v) and each level
// E>=q w. ((w<v) & phi_{c-q}(w)).
FormulaPtr upper_bound_formula(int n, int t);

}  // namespace csgame
