#include "csgame/separators.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "csgame/errors.hpp"

namespace csgame {

namespace {

constexpr std::array<std::pair<Point, Point>, kSeparatorPairs> kPairs = {{
    {Point::Min, Point::Max},
    {Point::Min, Point::X},
    {Point::Min, Point::Y},
    {Point::Min, Point::Z},
    {Point::Max, Point::X},
    {Point::Max, Point::Y},
    {Point::Max, Point::Z},
    {Point::X, Point::Y},
    {Point::X, Point::Z},
    {Point::Y, Point::Z},
}};

std::size_t idx(Point p) { return static_cast<std::size_t>(p); }

}  // namespace

const char* point_name(Point p) {
  switch (p) {
    case Point::Min: return "min";
    case Point::Max: return "max";
    case Point::X: return "x";
    case Point::Y: return "y";
    case Point::Z: return "z";
  }
  return "?";
}

int pair_index(Point a, Point b) {
  if (a == b) throw ContractError("separator pairs need two distinct points");
  if (idx(a) > idx(b)) std::swap(a, b);
  for (int i = 0; i < kSeparatorPairs; ++i) {
    if (kPairs[static_cast<std::size_t>(i)] == std::pair{a, b}) return i;
  }
  throw ContractError("unknown separator pair");
}

std::pair<Point, Point> pair_points(int index) {
  if (index < 0 || index >= kSeparatorPairs) throw ContractError("separator pair index out of range");
  return kPairs[static_cast<std::size_t>(index)];
}

std::string pair_name(int index) {
  auto [a, b] = pair_points(index);
  return std::string(point_name(a)) + "-" + point_name(b);
}

const char* lt_type(Element a, Element b) { return a == b ? "=" : (a < b ? "<" : ">"); }

std::array<Element, 5> points_of(const Structure& s, const Assignment& a) {
  auto mn = s.constant("min"), mx = s.constant("max");
  if (!mn || !mx) throw ContractError("separators need the constants min and max");
  for (int j = 0; j < 3; ++j) {
    if (!a.has(j)) throw ContractError("separators need x, y and z assigned");
  }
  return {*mn, *mx, a.get(0), a.get(1), a.get(2)};
}

namespace {

using Points = std::array<Element, 5>;

std::vector<Points> all_points(const Family& f) {
  std::vector<Points> out;
  for (const Assignment& a : f.members()) out.push_back(points_of(f.structure(), a));
  return out;
}

int sign(std::int64_t v) { return (v > 0) - (v < 0); }

// Unusable pairs get -1; the whole requirement is nullopt when some pair
// already differs in <-type.
std::optional<std::array<std::int64_t, kSeparatorPairs>> requirement(const Points& pa, const Points& pb) {
  std::array<std::int64_t, kSeparatorPairs> th{};
  for (int i = 0; i < kSeparatorPairs; ++i) {
    auto [u, v] = kPairs[static_cast<std::size_t>(i)];
    std::int64_t da = pa[idx(v)] - pa[idx(u)], db = pb[idx(v)] - pb[idx(u)];
    if (sign(da) != sign(db)) return std::nullopt;
    da = std::abs(da);
    db = std::abs(db);
    th[static_cast<std::size_t>(i)] = da == db ? -1 : std::min(da, db);
  }
  return th;
}

bool satisfies(const Separator& d, const std::array<std::int64_t, kSeparatorPairs>& th) {
  for (std::size_t i = 0; i < th.size(); ++i) {
    if (th[i] >= 0 && d.value[i] >= th[i]) return true;
  }
  return false;
}

}  // namespace

bool is_separator(const Separator& d, const Family& a, const Family& b) {
  std::vector<Points> pa = all_points(a), pb = all_points(b);
  for (const Points& p : pa) {
    for (const Points& q : pb) {
      auto th = requirement(p, q);
      if (th && !satisfies(d, *th)) return false;
    }
  }
  return true;
}

double WeightParts::weight() const { return std::sqrt(static_cast<double>(squared())); }

WeightParts weight_parts(const Separator& d) {
  WeightParts w;
  std::int64_t best_min = 0, best_max = 0;
  for (Point u : {Point::X, Point::Y, Point::Z}) {
    best_min = std::max(best_min, d(Point::Min, u));
    best_max = std::max(best_max, d(u, Point::Max));
  }
  w.border = std::max(d(Point::Min, Point::Max), best_min + best_max);
  std::array<std::int64_t, 3> c = {d(Point::X, Point::Y), d(Point::X, Point::Z), d(Point::Y, Point::Z)};
  std::sort(c.begin(), c.end());
  w.centre = c[1] + c[2];
  return w;
}

bool weight_le_sum(std::int64_t w2, std::int64_t a2, std::int64_t b2) {
  // w <= a + b  <=>  w^2 - a^2 - b^2 <= 2ab
  std::int64_t r = w2 - a2 - b2;
  if (r <= 0) return true;
  return static_cast<__int128>(r) * r <= static_cast<__int128>(4) * a2 * b2;
}

bool weight_le_plus(std::int64_t w2, std::int64_t a2, std::int64_t t) {
  std::int64_t r = w2 - a2 - t * t;
  if (r <= 0) return true;
  return static_cast<__int128>(r) * r <= static_cast<__int128>(4) * t * t * a2;
}

Separator sum_separator(const Separator& a, const Separator& b) {
  Separator out;
  for (std::size_t i = 0; i < out.value.size(); ++i) out.value[i] = a.value[i] + b.value[i];
  return out;
}

Separator quantifier_step_separator(const Separator& d1, Point u, int k) {
  if (u != Point::X && u != Point::Y && u != Point::Z) throw ContractError("the quantified point must be x, y or z");
  if (k < 1) throw ContractError("k must be at least 1");
  Separator d;  // every pair containing u stays 0
  const std::int64_t extra = k - 1;
  d.at(Point::Min, Point::Max) =
      std::max(d1(Point::Min, Point::Max), d1(Point::Min, u) + d1(u, Point::Max) + extra);
  std::vector<Point> others;
  for (Point p : {Point::X, Point::Y, Point::Z}) {
    if (p != u) others.push_back(p);
  }
  const Point u1 = others[0], u2 = others[1];
  d.at(u1, u2) = std::max(d1(u1, u2), d1(u1, u) + d1(u, u2) + extra);
  for (Point m : {Point::Min, Point::Max}) {
    for (Point p : others) d.at(m, p) = std::max(d1(m, p), d1(m, u) + d1(u, p) + extra);
  }
  return d;
}

Family zero_root(const StructurePtr& order) {
  return Family(order, var_bit(0) | var_bit(1) | var_bit(2), {Assignment().with(0, 0).with(1, 0).with(2, 0)});
}

Separator root_separator(int n) {
  Separator d;
  d.at(Point::Min, Point::Max) = n;
  return d;
}

}  // namespace csgame
