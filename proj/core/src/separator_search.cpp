#include <algorithm>
#include <set>

#include "csgame/errors.hpp"
#include "csgame/separators.hpp"

namespace csgame {

namespace {

using Threshold = std::array<std::int64_t, kSeparatorPairs>;

// Distinct threshold vectors of the pairs not already told apart by <-type;
// nullopt when some pair cannot be separated at all.
std::optional<std::vector<Threshold>> requirements(const Family& a, const Family& b) {
  std::vector<std::array<Element, 5>> pa, pb;
  for (const Assignment& m : a.members()) pa.push_back(points_of(a.structure(), m));
  for (const Assignment& m : b.members()) pb.push_back(points_of(b.structure(), m));
  std::set<Threshold> out;
  for (const auto& p : pa) {
    for (const auto& q : pb) {
      Threshold th{};
      bool typed = false;
      for (int i = 0; i < kSeparatorPairs && !typed; ++i) {
        auto [u, v] = pair_points(i);
        std::int64_t da = p[static_cast<std::size_t>(v)] - p[static_cast<std::size_t>(u)];
        std::int64_t db = q[static_cast<std::size_t>(v)] - q[static_cast<std::size_t>(u)];
        if ((da > 0) != (db > 0) || (da < 0) != (db < 0)) {
          typed = true;
          break;
        }
        da = std::abs(da);
        db = std::abs(db);
        th[static_cast<std::size_t>(i)] = da == db ? -1 : std::min(da, db);
      }
      if (typed) continue;
      if (std::all_of(th.begin(), th.end(), [](std::int64_t v) { return v < 0; })) return std::nullopt;
      out.insert(th);
    }
  }
  return std::vector<Threshold>(out.begin(), out.end());
}

bool covered(const Separator& d, const Threshold& th) {
  for (std::size_t i = 0; i < th.size(); ++i) {
    if (th[i] >= 0 && d.value[i] >= th[i]) return true;
  }
  return false;
}

class Search {
 public:
  Search(std::vector<Threshold> reqs, SeparatorSearchLimits limits) : reqs_(std::move(reqs)), limits_(limits) {}

  std::optional<MinimalSeparator> run() {
    dfs(Separator{});
    return best_;
  }

 private:
  bool worse(const Separator& d, std::int64_t w2) const {
    if (!best_) return false;
    std::int64_t b2 = best_->parts.squared();
    return w2 > b2 || (w2 == b2 && !(d < best_->separator));
  }

  void dfs(const Separator& d) {
    if (++nodes_ > limits_.max_nodes) throw ResourceLimitError("minimal separator search limit reached");
    if (!seen_.insert(d).second) return;
    WeightParts wp = weight_parts(d);
    if (worse(d, wp.squared())) return;
    // Branch on the uncovered requirement with the fewest options.
    const Threshold* pick = nullptr;
    int options = kSeparatorPairs + 1;
    for (const Threshold& th : reqs_) {
      if (covered(d, th)) continue;
      int n = static_cast<int>(std::count_if(th.begin(), th.end(), [](std::int64_t v) { return v >= 0; }));
      if (n < options) {
        options = n;
        pick = &th;
      }
    }
    if (!pick) {
      best_ = MinimalSeparator{d, wp};
      return;
    }
    const Threshold th = *pick;
    for (std::size_t i = 0; i < th.size(); ++i) {
      if (th[i] < 0) continue;
      Separator next = d;
      next.value[i] = std::max(next.value[i], th[i]);
      dfs(next);
    }
  }

  std::vector<Threshold> reqs_;
  SeparatorSearchLimits limits_;
  std::size_t nodes_ = 0;
  std::set<Separator> seen_;
  std::optional<MinimalSeparator> best_;
};

}  // namespace

std::optional<MinimalSeparator> minimal_separator(const Family& a, const Family& b, SeparatorSearchLimits limits) {
  auto reqs = requirements(a, b);
  if (!reqs) return std::nullopt;
  return Search(std::move(*reqs), limits).run();
}

std::optional<MinimalSeparator> minimal_separator_exhaustive(const Family& a, const Family& b, std::int64_t bound) {
  std::optional<MinimalSeparator> best;
  Separator d;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    std::int64_t w2 = weight_parts(d).squared();
    // Raising entries never lowers the weight.
    if (best && w2 >= best->parts.squared()) return;
    if (i == kSeparatorPairs) {
      if (is_separator(d, a, b)) best = MinimalSeparator{d, weight_parts(d)};
      return;
    }
    for (std::int64_t v = 0; v <= bound; ++v) {
      d.value[i] = v;
      self(self, i + 1);
    }
    d.value[i] = 0;
  };
  rec(rec, 0);
  return best;
}

namespace {

std::string label_of(const StrategyTree& n) {
  switch (n.kind) {
    case Kind::Atom: return n.atom ? to_string(*n.atom) : "?";
    case Kind::Not: return "~";
    case Kind::Or: return "|";
    case Kind::And: return "&";
    case Kind::Exists: return "E>=" + std::to_string(n.k) + " " + var_name(n.var);
    case Kind::Forall: return "A>=" + std::to_string(n.k) + " " + var_name(n.var);
  }
  return "?";
}

// Returns the squared minimal weight of the node, or -1 when unknown.
std::int64_t lemma5(const StrategyTree& node, int t, const std::string& path, SeparatorSearchLimits limits,
                    Lemma5Report& report) {
  std::vector<std::int64_t> child;
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    child.push_back(lemma5(node.children[i], t, path + "/" + std::to_string(i), limits, report));
  }
  Lemma5Row row;
  row.path = path.empty() ? "/" : path;
  row.label = label_of(node);
  std::optional<MinimalSeparator> ms;
  try {
    ms = minimal_separator(node.left, node.right, limits);
  } catch (const ResourceLimitError&) {
    report.complete = false;
    row.rule = "limit";
    report.rows.push_back(row);
    return -1;
  }
  if (!ms) {
    row.rule = "no-separator";
    row.pass = false;
    ++report.violations;
    report.rows.push_back(row);
    return -1;
  }
  row.parts = ms->parts;
  const std::int64_t w2 = ms->parts.squared();
  bool known = std::all_of(child.begin(), child.end(), [](std::int64_t v) { return v >= 0; });
  if (node.children.empty()) {
    row.rule = "leaf";
    row.bound_squared_lhs = 1;
    row.pass = w2 <= 1;
  } else if (!known) {
    row.rule = "unknown-child";
    report.complete = false;
  } else if (node.children.size() == 2) {
    row.rule = "binary";
    row.bound_squared_lhs = child[0] + child[1];
    row.pass = weight_le_sum(w2, child[0], child[1]);
  } else {
    row.rule = "unary";
    row.bound_squared_lhs = child[0];
    row.pass = weight_le_plus(w2, child[0], t);
  }
  if (!row.pass) ++report.violations;
  report.rows.push_back(row);
  return w2;
}

}  // namespace

Lemma5Report verify_lemma5(const StrategyTree& tree, int t, SeparatorSearchLimits limits) {
  Lemma5Report report;
  lemma5(tree, t, "", limits, report);
  return report;
}

bool tree_size_bound(const Formula& phi, const Family& a, const Family& b, int t, SeparatorSearchLimits limits) {
  if (!distinguishes(phi, a, b)) throw ContractError("formula does not distinguish the families");
  auto ms = minimal_separator(a, b, limits);
  if (!ms) throw ContractError("no separator exists for the root pair");
  const std::int64_t s = static_cast<std::int64_t>(size(phi)) * t;
  return s * s >= ms->parts.squared();
}

}  // namespace csgame
