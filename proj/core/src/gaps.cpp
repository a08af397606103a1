#include <algorithm>

#include "csgame/errors.hpp"
#include "csgame/separators.hpp"

namespace csgame {

const char* selector_name(GapSelector s) {
  switch (s) {
    case GapSelector::MinX: return "min-x";
    case GapSelector::XY: return "x-y";
    case GapSelector::YMax: return "y-max";
  }
  return "?";
}

namespace {

std::int64_t pos(const std::array<Element, 5>& p, Point u) { return p[static_cast<std::size_t>(u)]; }

std::int64_t radius(const Separator& d1, Point u) { return d1(u, Point::Z); }

int rank(Point p) {
  switch (p) {
    case Point::Min: return 0;
    case Point::X: return 1;
    case Point::Y: return 2;
    case Point::Max: return 3;
    default: return 4;
  }
}

}  // namespace

std::array<std::vector<Element>, 3> gaps(const std::array<Element, 5>& points, const Separator& d1) {
  if (pos(points, Point::X) > pos(points, Point::Y)) throw ContractError("gaps need x <= y; swap roles first");
  std::array<std::vector<Element>, 3> out;
  const std::pair<Point, Point> ranges[3] = {{Point::Min, Point::X}, {Point::X, Point::Y}, {Point::Y, Point::Max}};
  for (int s = 0; s < 3; ++s) {
    for (std::int64_t a = pos(points, ranges[s].first); a <= pos(points, ranges[s].second); ++a) {
      bool free = true;
      for (Point u : {Point::X, Point::Y, Point::Min, Point::Max}) {
        if (std::abs(a - pos(points, u)) <= radius(d1, u)) {
          free = false;
          break;
        }
      }
      if (free) out[static_cast<std::size_t>(s)].push_back(static_cast<Element>(a));
    }
  }
  return out;
}

std::vector<std::pair<Point, Point>> gap_candidates(GapSelector selector) {
  switch (selector) {
    case GapSelector::MinX:
      return {{Point::Min, Point::X}, {Point::Min, Point::Y}, {Point::Min, Point::Max}};
    case GapSelector::YMax:
      return {{Point::Y, Point::Max}, {Point::X, Point::Max}, {Point::Min, Point::Max}};
    case GapSelector::XY:
      return {{Point::X, Point::Y}, {Point::Min, Point::Y}, {Point::X, Point::Max}, {Point::Min, Point::Max}};
  }
  return {};
}

std::pair<Point, Point> gap_variables(const std::array<Element, 5>& points, GapSelector selector,
                                      const Separator& d1) {
  const std::int64_t g = static_cast<std::int64_t>(gaps(points, d1)[static_cast<std::size_t>(selector)].size());
  std::vector<std::pair<Point, Point>> ok;
  for (auto [v, v2] : gap_candidates(selector)) {
    if (g + radius(d1, v) + radius(d1, v2) + 1 >= std::abs(pos(points, v2) - pos(points, v))) ok.emplace_back(v, v2);
  }
  if (ok.empty()) throw ContractError(std::string("no gap variables for the ") + selector_name(selector) + " gap");
  return *std::min_element(ok.begin(), ok.end(), [](auto l, auto r) {
    return std::pair{rank(l.first), rank(l.second)} < std::pair{rank(r.first), rank(r.second)};
  });
}

bool gap_inequality_literal(const std::array<Element, 5>& points, GapSelector selector, const Separator& d1,
                            Point v, Point v2) {
  const std::int64_t g = static_cast<std::int64_t>(gaps(points, d1)[static_cast<std::size_t>(selector)].size());
  return g + radius(d1, v) + radius(d1, Point::X) >= std::abs(pos(points, v2) - pos(points, v));
}

namespace {

FormulaPtr phi(int c, int v, int t) {
  if (c == 0) return eq(Term::variable(v), Term::variable(v));
  const int q = c % t == 0 ? t : c % t;
  const int w = 1 - v;
  return exists(q, w, conj(lt(Term::variable(w), Term::variable(v)), phi(c - q, w, t)));
}

}  // namespace

FormulaPtr upper_bound_formula(int n, int t) {
  if (n < 0 || t < 1) throw ContractError("need n >= 0 and t >= 1");
  return neg(exists(1, 0, phi(n + 1, 0, t)));
}

}  // namespace csgame
