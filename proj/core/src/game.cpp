#include <algorithm>
#include <cstring>
#include <map>
#include <unordered_map>

#include "csgame/errors.hpp"
#include "game_internal.hpp"

namespace csgame {

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

struct LimitHit {};

bool atom_true(const Structure& s, const Assignment& a, const Formula& f) { return eval_naive(s, a, f); }

Family singleton(const Family& f, std::size_t i) {
  return make_trusted_family(f.structure_ptr(), f.dom(), {f.members()[i]});
}

Family singleton_of(const Family& like, const Assignment& a) {
  return make_trusted_family(like.structure_ptr(), like.dom() | a.domain(), {a});
}

}  // namespace

struct Solver::Impl {
  GameConfig cfg;
  struct Entry {
    std::size_t min_win = kInf;
    std::size_t max_lose = 0;
  };
  std::unordered_map<std::string, Entry> memo;
  std::map<const Structure*, StructurePtr> keep;
  std::map<std::string, std::vector<FormulaPtr>> atom_cache;
  std::size_t states = 0;

  explicit Impl(GameConfig c) : cfg(std::move(c)) { cfg.validate(); }

  void hold(const Family& f) {
    if (f.structure_ptr()) keep.emplace(f.structure_ptr().get(), f.structure_ptr());
  }

  static void put(std::string& key, const void* p, std::size_t n) { key.append(static_cast<const char*>(p), n); }

  std::string key(const Family& a, const Family& b) const {
    std::string k;
    const Structure* sa = a.structure_ptr().get();
    const Structure* sb = b.structure_ptr().get();
    put(k, &sa, sizeof sa);
    put(k, &sb, sizeof sb);
    VarMask dom = a.dom();
    put(k, &dom, sizeof dom);
    std::vector<int> vars;
    for (int j = 0; j < kMaxVariables; ++j) {
      if (dom & var_bit(j)) vars.push_back(j);
    }
    for (const Family* f : {&a, &b}) {
      std::uint32_t n = static_cast<std::uint32_t>(f->size());
      put(k, &n, sizeof n);
      for (const Assignment& m : f->members()) {
        for (int j : vars) {
          std::uint16_t e = static_cast<std::uint16_t>(m.get(j));
          put(k, &e, sizeof e);
        }
      }
    }
    return k;
  }

  // Atoms usable on this pair with free variables inside dom.
  const std::vector<FormulaPtr>& atoms(const Family& a, const Family& b, VarMask dom) {
    std::string k;
    const Structure* sa = a.structure_ptr().get();
    const Structure* sb = b.structure_ptr().get();
    put(k, &sa, sizeof sa);
    put(k, &sb, sizeof sb);
    put(k, &dom, sizeof dom);
    auto it = atom_cache.find(k);
    if (it != atom_cache.end()) return it->second;
    Vocabulary va = a.structure().vocabulary(), vb = b.structure().vocabulary();
    Vocabulary v = Vocabulary::merge(va, vb);
    v.constants = Vocabulary::intersect(va, vb).constants;
    std::vector<FormulaPtr> out;
    for (FormulaPtr& f : all_atoms(v, cfg.m)) {
      if ((free_variables(*f) & ~dom) == 0) out.push_back(std::move(f));
    }
    return atom_cache.emplace(k, std::move(out)).first->second;
  }

  FormulaPtr atomic(const Family& a, const Family& b) {
    for (const FormulaPtr& f : atoms(a, b, a.dom())) {
      bool ok = true;
      for (const Assignment& m : a.members()) {
        if (!atom_true(a.structure(), m, *f)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (const Assignment& m : b.members()) {
        if (atom_true(b.structure(), m, *f)) {
          ok = false;
          break;
        }
      }
      if (ok) return f;
    }
    return nullptr;
  }

  void record(const std::string& k, std::size_t w, bool won) {
    Entry& e = memo[k];
    if (won) {
      e.min_win = std::min(e.min_win, w);
    } else {
      e.max_lose = std::max(e.max_lose, w);
    }
  }

  bool win(std::size_t w, const Family& a, const Family& b, Move* out = nullptr, FormulaPtr* leaf = nullptr) {
    std::string k = key(a, b);
    if (!out) {
      auto it = memo.find(k);
      if (it != memo.end()) {
        if (w >= it->second.min_win) return true;
        if (w <= it->second.max_lose) return false;
      }
    }
    if (++states > cfg.max_states) throw LimitHit{};
    if (FormulaPtr f = atomic(a, b)) {
      if (leaf) *leaf = f;
      record(k, 1, true);
      return true;
    }
    bool won = w > 1 && search(w, a, b, out);
    record(k, w, won);
    return won;
  }

  bool search(std::size_t w, const Family& a, const Family& b, Move* out) {
    // A losing pair of single interpretations loses for the whole position.
    if (a.size() * b.size() > 1) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
          if (!win(w, singleton(a, i), singleton(b, j))) return false;
        }
      }
    }
    if (win(w - 1, b, a)) {
      if (out) *out = Move{};
      return true;
    }
    const int universe = std::max(a.structure().size(), b.structure().size());
    for (int k = 1; k <= detail::max_k(cfg, universe); ++k) {
      for (int j = 0; j < cfg.m; ++j) {
        std::vector<int> guards;
        if (cfg.variant == Variant::Guarded) {
          for (int g = 0; g < cfg.m; ++g) {
            if (g != j && (a.dom() & var_bit(g))) guards.push_back(g);
          }
        } else {
          guards.push_back(-1);
        }
        for (int g : guards) {
          for (bool ex : {true, false}) {
            if (quantifier(w, a, b, k, j, g, ex, out)) return true;
          }
        }
      }
    }
    for (std::size_t u = 1; u <= w / 2; ++u) {
      if (a.size() >= 2 && binary(w, u, a, b, true, out)) return true;
      if (b.size() >= 2 && binary(w, u, a, b, false, out)) return true;
    }
    return false;
  }

  bool binary(std::size_t w, std::size_t u, const Family& a, const Family& b, bool is_or, Move* out) {
    const std::size_t v = w - u;
    const Family& split = is_or ? a : b;
    const std::size_t n = split.size();
    if (n > 24) throw ResourceLimitError("family too large for binary moves");
    auto sub = [&](std::size_t budget, const Family& part) {
      return is_or ? win(budget, part, b) : win(budget, a, part);
    };
    std::vector<char> can1(n), can2(n);
    std::vector<std::size_t> free_idx;
    std::vector<int> side(n);
    for (std::size_t i = 0; i < n; ++i) {
      Family s = singleton(split, i);
      can1[i] = sub(u, s);
      can2[i] = u == v ? can1[i] : sub(v, s);
      if (!can1[i] && !can2[i]) return false;
      if (can1[i] && can2[i]) {
        free_idx.push_back(i);
      } else {
        side[i] = can1[i] ? 1 : 2;
      }
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << free_idx.size()); ++mask) {
      for (std::size_t f = 0; f < free_idx.size(); ++f) side[free_idx[f]] = (mask >> f) & 1 ? 2 : 1;
      std::vector<bool> first(n), second(n);
      for (std::size_t i = 0; i < n; ++i) {
        first[i] = side[i] == 1;
        second[i] = side[i] == 2;
      }
      if (std::none_of(first.begin(), first.end(), [](bool x) { return x; }) ||
          std::none_of(second.begin(), second.end(), [](bool x) { return x; })) {
        continue;
      }
      if (sub(u, split.select(first)) && sub(v, split.select(second))) {
        if (out) {
          out->kind = is_or ? MoveKind::Or : MoveKind::And;
          out->u = u;
          out->v = v;
          out->side = side;
        }
        return true;
      }
    }
    return false;
  }

  bool quantifier(std::size_t w, const Family& a, const Family& b, int k, int j, int g, bool ex, Move* out);
};

bool Solver::Impl::quantifier(std::size_t w, const Family& a, const Family& b, int k, int j, int g, bool ex,
                              Move* out) {
  const Family& active = ex ? a : b;
  const Family& passive = ex ? b : a;
  const Structure& sa = active.structure();
  const Structure& sp = passive.structure();
  const std::size_t cw = w - 1;

  std::vector<std::vector<Element>> act_pool, pas_pool;
  for (const Assignment& m : active.members()) {
    act_pool.push_back(detail::candidates(sa, m, g, cfg));
    if (static_cast<int>(act_pool.back().size()) < k) return false;  // no k-choice function
  }
  // Passive members with fewer than k candidates contribute nothing.
  std::vector<std::size_t> live;
  for (std::size_t p = 0; p < passive.size(); ++p) {
    pas_pool.push_back(detail::candidates(sp, passive.members()[p], g, cfg));
    if (static_cast<int>(pas_pool.back().size()) >= k) live.push_back(p);
  }
  auto orient = [&](const Family& act_child, const Family& pas_child) {
    return ex ? std::pair<Family, Family>{act_child, pas_child} : std::pair<Family, Family>{pas_child, act_child};
  };
  auto finish = [&](std::vector<std::vector<Element>> choices, std::vector<std::vector<Element>> excl) {
    if (out) {
      out->kind = ex ? MoveKind::Exists : MoveKind::Forall;
      out->var = j;
      out->k = k;
      out->guard = g;
      out->choices = std::move(choices);
      out->exclusions = std::move(excl);
    }
    return true;
  };

  if (cw == 1) {
    // The child must be atomic: pick an atom, k active witnesses with the
    // right value, and exclude the (at most k-1) wrong passive extensions.
    const bool want = ex;
    for (const FormulaPtr& f : atoms(a, b, a.dom() | var_bit(j))) {
      std::vector<std::vector<Element>> choices, excl(passive.size());
      bool ok = true;
      for (std::size_t i = 0; i < active.size() && ok; ++i) {
        std::vector<Element> pick;
        for (Element e : act_pool[i]) {
          if (atom_true(sa, active.members()[i].with(j, e), *f) == want) {
            pick.push_back(e);
            if (static_cast<int>(pick.size()) == k) break;
          }
        }
        ok = static_cast<int>(pick.size()) == k;
        choices.push_back(std::move(pick));
      }
      for (std::size_t p : live) {
        if (!ok) break;
        for (Element e : pas_pool[p]) {
          if (atom_true(sp, passive.members()[p].with(j, e), *f) == want) excl[p].push_back(e);
        }
        ok = static_cast<int>(excl[p].size()) <= k - 1;
      }
      if (ok) return finish(std::move(choices), std::move(excl));
    }
    return false;
  }

  // ok[i][x][p][y]: the single pair (active i with x, passive p with y) is winnable at cw.
  const std::size_t na = active.size();
  std::vector<std::vector<std::vector<std::vector<char>>>> ok(na);
  for (std::size_t i = 0; i < na; ++i) {
    ok[i].resize(act_pool[i].size());
    for (std::size_t x = 0; x < act_pool[i].size(); ++x) {
      Family ai = singleton_of(active, active.members()[i].with(j, act_pool[i][x]));
      ok[i][x].resize(passive.size());
      for (std::size_t p : live) {
        ok[i][x][p].resize(pas_pool[p].size());
        for (std::size_t y = 0; y < pas_pool[p].size(); ++y) {
          Family bp = singleton_of(passive, passive.members()[p].with(j, pas_pool[p][y]));
          auto [l, r] = orient(ai, bp);
          ok[i][x][p][y] = win(cw, l, r) ? 1 : 0;
        }
      }
    }
  }

  std::vector<std::vector<std::vector<std::size_t>>> subsets_idx(na);
  for (std::size_t i = 0; i < na; ++i) {
    std::vector<Element> idx(act_pool[i].size());
    for (std::size_t x = 0; x < idx.size(); ++x) idx[x] = static_cast<Element>(x);
    for (auto& s : detail::subsets(idx, k)) {
      std::vector<std::size_t> t(s.begin(), s.end());
      subsets_idx[i].push_back(std::move(t));
    }
  }

  // bad[p]: passive candidate positions that must be excluded.
  std::vector<std::vector<char>> bad(passive.size());
  for (std::size_t p : live) bad[p].assign(pas_pool[p].size(), 0);
  std::vector<std::size_t> pick(na);

  auto full_check = [&]() -> bool {
    std::vector<std::vector<Element>> choices(na);
    for (std::size_t i = 0; i < na; ++i) {
      for (std::size_t x : subsets_idx[i][pick[i]]) choices[i].push_back(act_pool[i][x]);
    }
    Family act_child = detail::active_extend(active, j, choices);
    // Pad each live exclusion set with free candidates up to k-1 elements.
    std::vector<std::vector<std::vector<Element>>> pads(passive.size());
    std::vector<std::size_t> sizes;
    for (std::size_t p = 0; p < passive.size(); ++p) {
      std::vector<Element> forced, spare;
      if (!bad[p].empty()) {
        for (std::size_t y = 0; y < pas_pool[p].size(); ++y) {
          (bad[p][y] ? forced : spare).push_back(pas_pool[p][y]);
        }
      }
      int room = bad[p].empty() ? 0 : k - 1 - static_cast<int>(forced.size());
      for (auto& extra : detail::subsets(spare, room)) {
        std::vector<Element> e = forced;
        e.insert(e.end(), extra.begin(), extra.end());
        std::sort(e.begin(), e.end());
        pads[p].push_back(std::move(e));
      }
      sizes.push_back(pads[p].size());
    }
    bool found = false;
    detail::for_each_product(sizes, [&](const std::vector<std::size_t>& idx) {
      std::vector<std::vector<Element>> excl(passive.size());
      for (std::size_t p = 0; p < passive.size(); ++p) excl[p] = pads[p][idx[p]];
      Family pas_child = detail::passive_extend(passive, j, k, excl, g, cfg);
      auto [l, r] = orient(act_child, pas_child);
      if (win(cw, l, r)) {
        found = finish(choices, excl);
        return false;
      }
      return true;
    });
    return found;
  };

  auto dfs = [&](auto&& self, std::size_t i) -> bool {
    if (i == na) return full_check();
    for (std::size_t s = 0; s < subsets_idx[i].size(); ++s) {
      pick[i] = s;
      std::vector<std::pair<std::size_t, std::size_t>> added;
      bool feasible = true;
      for (std::size_t p : live) {
        int count = static_cast<int>(std::count(bad[p].begin(), bad[p].end(), 1));
        for (std::size_t x : subsets_idx[i][s]) {
          for (std::size_t y = 0; y < pas_pool[p].size(); ++y) {
            if (!ok[i][x][p][y] && !bad[p][y]) {
              bad[p][y] = 1;
              added.emplace_back(p, y);
              ++count;
            }
          }
        }
        if (count > k - 1) {
          feasible = false;
          break;
        }
      }
      if (feasible && self(self, i + 1)) return true;
      for (auto [p, y] : added) bad[p][y] = 0;
    }
    return false;
  };
  return dfs(dfs, 0);
}

Solver::Solver(GameConfig cfg) : impl_(std::make_unique<Impl>(std::move(cfg))) {}
Solver::~Solver() = default;

std::size_t Solver::states_expanded() const { return impl_->states; }
const GameConfig& Solver::config() const { return impl_->cfg; }

namespace {

void check_position(const GamePosition& p) {
  if (!p.left.structure_ptr() || !p.right.structure_ptr()) throw ContractError("position without structures");
  if (p.left.dom() != p.right.dom()) throw ContractError("families have different domains");
  if (p.w < 1) throw ContractError("budget must be at least 1");
}

}  // namespace

Outcome Solver::solve(const GamePosition& p) {
  check_position(p);
  impl_->hold(p.left);
  impl_->hold(p.right);
  try {
    return impl_->win(p.w, p.left, p.right) ? Outcome::SpoilerWins : Outcome::DuplicatorWins;
  } catch (const LimitHit&) {
    return Outcome::Unknown;
  }
}

std::optional<StrategyTree> Solver::certificate(const GamePosition& p) {
  if (solve(p) != Outcome::SpoilerWins) return std::nullopt;
  auto build = [&](auto&& self, std::size_t w, const Family& a, const Family& b) -> StrategyTree {
    StrategyTree node;
    node.budget = w;
    node.left = a;
    node.right = b;
    Move move;
    FormulaPtr leaf;
    if (!impl_->win(w, a, b, &move, &leaf)) throw ContractError("certificate search lost a winning position");
    if (leaf) {
      node.kind = Kind::Atom;
      node.atom = leaf;
      return node;
    }
    node.move = move;
    static const Kind kinds[] = {Kind::Not, Kind::Or, Kind::And, Kind::Exists, Kind::Forall};
    node.kind = kinds[static_cast<int>(move.kind)];
    node.k = move.k;
    node.var = move.var;
    node.guard = move.guard;
    if (move.kind != MoveKind::Exists && move.kind != MoveKind::Forall) {
      node.k = 0;
      node.var = 0;
      node.guard = -1;
    }
    std::vector<Family> fam = detail::child_families(a, b, move, impl_->cfg);
    if (move.kind == MoveKind::Or || move.kind == MoveKind::And) {
      node.children.push_back(self(self, move.u, fam[0], fam[1]));
      node.children.push_back(self(self, move.v, fam[2], fam[3]));
    } else {
      node.children.push_back(self(self, w - 1, fam[0], fam[1]));
    }
    return node;
  };
  try {
    return build(build, p.w, p.left, p.right);
  } catch (const LimitHit&) {
    return std::nullopt;
  }
}

bool spoiler_wins(const GamePosition& p, const GameConfig& cfg, StrategyTree* certificate) {
  Solver solver(cfg);
  Outcome o = solver.solve(p);
  if (o == Outcome::Unknown) throw ResourceLimitError("game search state limit reached");
  if (o == Outcome::SpoilerWins && certificate) {
    auto tree = solver.certificate(p);
    if (!tree) throw ResourceLimitError("game search state limit reached while extracting the certificate");
    *certificate = std::move(*tree);
  }
  return o == Outcome::SpoilerWins;
}

std::optional<MinSizeResult> min_distinguishing_size(const Family& a, const Family& b, const GameConfig& cfg,
                                                     std::size_t cap) {
  Solver solver(cfg);
  for (std::size_t w = 1; w <= cap; ++w) {
    GamePosition p{w, a, b};
    Outcome o = solver.solve(p);
    if (o == Outcome::Unknown) throw ResourceLimitError("game search state limit reached at w=" + std::to_string(w));
    if (o == Outcome::SpoilerWins) {
      auto tree = solver.certificate(p);
      if (!tree) throw ResourceLimitError("game search state limit reached while extracting the certificate");
      MinSizeResult r;
      r.w = w;
      r.formula = strategy_to_formula(*tree, cfg);
      r.tree = std::move(*tree);
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace csgame
