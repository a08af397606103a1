#include <algorithm>

#include "csgame/errors.hpp"
#include "game_internal.hpp"

namespace csgame {

void GameConfig::validate() const {
  if (m < 1 || m > kMaxVariables) throw ContractError("m must be in 1.." + std::to_string(kMaxVariables));
  if (t < 1) throw ContractError("counting rank bound must be at least 1");
  if (variant == Variant::Guarded && m != 2) throw ContractError("the guarded variant uses exactly two variables");
}

namespace detail {

std::vector<Element> candidates(const Structure& s, const Assignment& a, int guard, const GameConfig& cfg) {
  std::vector<Element> out;
  if (guard < 0) {
    out.resize(static_cast<std::size_t>(s.size()));
    for (Element e = 0; e < s.size(); ++e) out[static_cast<std::size_t>(e)] = e;
    return out;
  }
  Element g = a.at(guard);
  for (Element e = 0; e < s.size(); ++e) {
    Element tuple[2] = {g, e};
    if (s.holds(cfg.guard_relation, tuple)) out.push_back(e);
  }
  return out;
}

std::vector<std::vector<Element>> subsets(const std::vector<Element>& pool, int k) {
  std::vector<std::vector<Element>> out;
  if (k < 0 || static_cast<std::size_t>(k) > pool.size()) return out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  while (true) {
    std::vector<Element> cur;
    for (std::size_t i : idx) cur.push_back(pool[i]);
    out.push_back(std::move(cur));
    std::size_t i = idx.size();
    while (i > 0 && idx[i - 1] == pool.size() - idx.size() + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<std::vector<Element>> subsets_up_to(const std::vector<Element>& pool, int limit) {
  std::vector<std::vector<Element>> out;
  for (int s = 0; s <= limit && static_cast<std::size_t>(s) <= pool.size(); ++s) {
    auto level = subsets(pool, s);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

Family active_extend(const Family& f, int var, const std::vector<std::vector<Element>>& choices) {
  std::vector<Assignment> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (Element e : choices[i]) out.push_back(f.members()[i].with(var, e));
  }
  return make_trusted_family(f.structure_ptr(), f.dom() | var_bit(var), std::move(out));
}

Family passive_extend(const Family& f, int var, int k, const std::vector<std::vector<Element>>& exclusions,
                      int guard, const GameConfig& cfg) {
  std::vector<Assignment> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Assignment& a = f.members()[i];
    std::vector<Element> pool = candidates(f.structure(), a, guard, cfg);
    if (static_cast<int>(pool.size()) < k) continue;
    for (Element e : pool) {
      if (std::find(exclusions[i].begin(), exclusions[i].end(), e) == exclusions[i].end()) {
        out.push_back(a.with(var, e));
      }
    }
  }
  return make_trusted_family(f.structure_ptr(), f.dom() | var_bit(var), std::move(out));
}

int max_k(const GameConfig& cfg, int universe) {
  return cfg.t == kUnboundedRank ? std::max(universe, 1) : cfg.t;
}

namespace {

void check_choices(const Family& f, const Move& move, const GameConfig& cfg) {
  if (move.choices.size() != f.size()) throw ContractError("one k-choice per active member required");
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& c = move.choices[i];
    if (static_cast<int>(c.size()) != move.k) throw ContractError("k-choice has the wrong size");
    std::vector<Element> sorted = c;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ContractError("k-choice elements must be distinct");
    }
    std::vector<Element> pool = candidates(f.structure(), f.members()[i], move.guard, cfg);
    for (Element e : c) {
      if (!std::binary_search(pool.begin(), pool.end(), e)) throw ContractError("k-choice outside the choice space");
    }
  }
}

void check_exclusions(const Family& f, const Move& move) {
  if (move.exclusions.size() != f.size()) throw ContractError("one exclusion set per passive member required");
  for (const auto& ex : move.exclusions) {
    if (static_cast<int>(ex.size()) > move.k - 1) throw ContractError("exclusion set larger than k-1");
    for (Element e : ex) {
      if (e < 0 || e >= f.structure().size()) throw ContractError("excluded element outside the universe");
    }
  }
}

std::pair<Family, Family> split(const Family& f, const std::vector<int>& side) {
  if (side.size() != f.size()) throw ContractError("split needs one side per member");
  std::vector<bool> first(f.size()), second(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (side[i] < 1 || side[i] > 3) throw ContractError("side must be 1, 2 or 3");
    first[i] = (side[i] & 1) != 0;
    second[i] = (side[i] & 2) != 0;
  }
  return {f.select(first), f.select(second)};
}

}  // namespace

std::vector<Family> child_families(const Family& left, const Family& right, const Move& move,
                                   const GameConfig& cfg) {
  switch (move.kind) {
    case MoveKind::Not:
      return {right, left};
    case MoveKind::Or: {
      auto [c, d] = split(left, move.side);
      return {c, right, d, right};
    }
    case MoveKind::And: {
      auto [c, d] = split(right, move.side);
      return {left, c, left, d};
    }
    case MoveKind::Exists:
    case MoveKind::Forall: {
      if (move.var < 0 || move.var >= cfg.m) throw ContractError("quantified variable outside the fragment");
      if (move.k < 1) throw ContractError("k must be at least 1");
      if (cfg.t != kUnboundedRank && move.k > cfg.t) throw ContractError("k exceeds the counting rank bound");
      if (cfg.variant == Variant::Guarded) {
        if (move.guard < 0 || move.guard >= cfg.m || move.guard == move.var || !(left.dom() & var_bit(move.guard))) {
          throw ContractError("guarded moves need an assigned guard variable other than the quantified one");
        }
      } else if (move.guard != -1) {
        throw ContractError("guards are only used in the guarded variant");
      }
      const bool ex = move.kind == MoveKind::Exists;
      const Family& active = ex ? left : right;
      const Family& passive = ex ? right : left;
      check_choices(active, move, cfg);
      check_exclusions(passive, move);
      Family a = active_extend(active, move.var, move.choices);
      Family p = passive_extend(passive, move.var, move.k, move.exclusions, move.guard, cfg);
      if (ex) return {a, p};
      return {p, a};
    }
  }
  return {};
}

bool for_each_product(const std::vector<std::size_t>& sizes,
                      const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  for (std::size_t s : sizes) {
    if (s == 0) return true;
  }
  std::vector<std::size_t> idx(sizes.size(), 0);
  while (true) {
    if (!fn(idx)) return false;
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == sizes[i]) idx[i++] = 0;
    if (i == idx.size()) return true;
  }
}

}  // namespace detail

std::vector<GamePosition> apply_move(const GamePosition& p, const Move& move, const GameConfig& cfg) {
  cfg.validate();
  if (p.w < 2) throw ContractError("no moves at budget 1");
  std::vector<Family> fam = detail::child_families(p.left, p.right, move, cfg);
  if (move.kind == MoveKind::Or || move.kind == MoveKind::And) {
    if (move.u < 1 || move.v < 1 || move.u + move.v != p.w) throw ContractError("binary budgets must split w");
    return {{move.u, fam[0], fam[1]}, {move.v, fam[2], fam[3]}};
  }
  return {{p.w - 1, fam[0], fam[1]}};
}

std::vector<Move> legal_moves(const GamePosition& p, const GameConfig& cfg) {
  cfg.validate();
  std::vector<Move> out;
  if (p.w < 2) return out;
  constexpr std::size_t kMaxMoves = 1'000'000;
  auto push = [&](Move m) {
    if (out.size() >= kMaxMoves) throw ResourceLimitError("too many legal moves to list");
    out.push_back(std::move(m));
  };
  push(Move{});
  for (MoveKind kind : {MoveKind::Or, MoveKind::And}) {
    const Family& f = kind == MoveKind::Or ? p.left : p.right;
    if (f.size() > 20) throw ResourceLimitError("family too large to list partitions");
    for (std::size_t u = 1; u < p.w; ++u) {
      for (std::size_t mask = 0; mask < (std::size_t{1} << f.size()); ++mask) {
        Move m;
        m.kind = kind;
        m.u = u;
        m.v = p.w - u;
        for (std::size_t i = 0; i < f.size(); ++i) m.side.push_back((mask >> i) & 1 ? 2 : 1);
        push(std::move(m));
      }
    }
  }
  const int universe = std::max(p.left.structure().size(), p.right.structure().size());
  for (int k = 1; k <= detail::max_k(cfg, universe); ++k) {
    for (int j = 0; j < cfg.m; ++j) {
      std::vector<int> guards;
      if (cfg.variant == Variant::Guarded) {
        for (int i = 0; i < cfg.m; ++i) {
          if (i != j && (p.left.dom() & var_bit(i))) guards.push_back(i);
        }
      } else {
        guards.push_back(-1);
      }
      for (int g : guards) {
        for (MoveKind kind : {MoveKind::Exists, MoveKind::Forall}) {
          const bool ex = kind == MoveKind::Exists;
          const Family& active = ex ? p.left : p.right;
          const Family& passive = ex ? p.right : p.left;
          std::vector<std::vector<std::vector<Element>>> choice_opts, excl_opts;
          std::vector<std::size_t> sizes;
          for (const Assignment& a : active.members()) {
            choice_opts.push_back(detail::subsets(detail::candidates(active.structure(), a, g, cfg), k));
            sizes.push_back(choice_opts.back().size());
          }
          std::vector<Element> all;
          for (Element e = 0; e < passive.structure().size(); ++e) all.push_back(e);
          for (std::size_t i = 0; i < passive.size(); ++i) {
            excl_opts.push_back(detail::subsets_up_to(all, k - 1));
            sizes.push_back(excl_opts.back().size());
          }
          detail::for_each_product(sizes, [&](const std::vector<std::size_t>& idx) {
            Move m;
            m.kind = kind;
            m.var = j;
            m.k = k;
            m.guard = g;
            for (std::size_t i = 0; i < active.size(); ++i) m.choices.push_back(choice_opts[i][idx[i]]);
            for (std::size_t i = 0; i < passive.size(); ++i) {
              m.exclusions.push_back(excl_opts[i][idx[active.size() + i]]);
            }
            push(std::move(m));
            return true;
          });
        }
      }
    }
  }
  return out;
}

std::string describe(const Move& move) {
  auto list = [](const std::vector<std::vector<Element>>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += "{";
      for (std::size_t j = 0; j < v[i].size(); ++j) {
        if (j) s += ",";
        s += std::to_string(v[i][j]);
      }
      s += "}";
    }
    return s + "]";
  };
  switch (move.kind) {
    case MoveKind::Not:
      return "not";
    case MoveKind::Or:
    case MoveKind::And: {
      std::string s = move.kind == MoveKind::Or ? "or" : "and";
      s += " u=" + std::to_string(move.u) + " v=" + std::to_string(move.v) + " sides=";
      for (int x : move.side) s += std::to_string(x);
      return s;
    }
    case MoveKind::Exists:
    case MoveKind::Forall: {
      std::string s = move.kind == MoveKind::Exists ? "exists" : "forall";
      s += ">=" + std::to_string(move.k) + " " + var_name(move.var);
      if (move.guard >= 0) s += " guard=" + var_name(move.guard);
      return s + " choices=" + list(move.choices) + " exclusions=" + list(move.exclusions);
    }
  }
  return {};
}

}  // namespace csgame
