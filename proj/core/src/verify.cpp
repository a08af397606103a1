#include "csgame/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "csgame/ef_pebble.hpp"
#include "csgame/errors.hpp"
#include "csgame/game.hpp"
#include "csgame/logic.hpp"
#include "csgame/separators.hpp"
#include "game_internal.hpp"

namespace csgame {

const char* status_name(CaseStatus s) {
  switch (s) {
    case CaseStatus::Pass: return "pass";
    case CaseStatus::Fail: return "fail";
    case CaseStatus::Unknown: return "unknown";
  }
  return "?";
}

std::size_t SuiteReport::count(CaseStatus s) const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [&](const CaseResult& c) { return c.status == s; }));
}

namespace {

int pick(int value, int fallback) { return value > 0 ? value : fallback; }

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void finish(SuiteReport& r) {
  std::stable_sort(r.cases.begin(), r.cases.end(), [](const CaseResult& a, const CaseResult& b) { return a.key < b.key; });
}

CaseResult verdict(std::string key, bool pass, std::string detail) {
  return {std::move(key), pass ? CaseStatus::Pass : CaseStatus::Fail, std::move(detail)};
}

std::size_t prop2_bound(int n, int t) { return static_cast<std::size_t>(2 * ((n + 1 + t - 1) / t) + 5); }

// Size at least sqrt(n)/t, exactly.
bool root_bound_holds(std::size_t size, int n, int t) {
  const auto st = static_cast<long long>(size) * t;
  return st * st >= n;
}

}  // namespace

SuiteReport verify_prop2(const VerifyParams& p) {
  SuiteReport r{"prop2", {}};
  const int n_max = pick(p.n_max, 20);
  const int t_max = pick(p.t_max, 3);
  for (int t = 1; t <= t_max; ++t) {
    for (int n = 0; n < n_max; ++n) {
      const FormulaPtr phi = upper_bound_formula(n, t);
      const std::size_t sz = size(*phi);
      const std::size_t bound = prop2_bound(n, t);
      const Family a = Family::sentence(linear_order(n, false));
      for (int m = n + 1; m <= n_max; ++m) {
        const Family b = Family::sentence(linear_order(m, false));
        const bool dist = distinguishes(*phi, a, b);
        r.cases.push_back(verdict(fmt("t=%d n=%02d m=%02d", t, n, m), dist && sz <= bound,
                                  fmt("size=%zu bound=%zu distinguishes=%d", sz, bound, dist ? 1 : 0)));
      }
    }
  }
  finish(r);
  return r;
}

SuiteReport verify_thm5(const VerifyParams& p) {
  SuiteReport r{"thm5", {}};
  const int t_max = pick(p.t_max, 2);
  const int k_max = pick(p.k_max, 3);
  const int extra = p.extra >= 0 ? p.extra : 10;
  const int cap = pick(p.n_max, 40);
  for (int t = 1; t <= t_max; ++t) {
    for (int k = 1; k <= k_max; ++k) {
      int lo = 1;
      for (int i = 0; i < k; ++i) lo *= t + 1;
      const int hi = std::min(lo + extra, cap);
      for (int la = lo; la <= hi; ++la) {
        for (int lb = lo; lb <= hi; ++lb) {
          const std::string key = fmt("t=%d k=%d a=%02d b=%02d", t, k, la, lb);
          try {
            const LinearCheckReport rep = verify_linear_strategy(la, lb, k, t, k);
            r.cases.push_back(verdict(key, rep.ok,
                                      rep.ok ? fmt("states=%zu spoiler_moves=%zu", rep.states, rep.spoiler_moves)
                                             : rep.failure));
          } catch (const ResourceLimitError& e) {
            r.cases.push_back({key, CaseStatus::Unknown, e.what()});
          }
        }
      }
    }
  }
  finish(r);
  return r;
}

namespace {

// Random C^t_3 formula of exactly the given size over <, = and the constants.
class RandomFormulas {
 public:
  RandomFormulas(std::uint64_t seed, int t) : rng_(seed), t_(t) {
    Vocabulary v;
    v.relations["<"] = 2;
    v.constants = {"min", "max"};
    atoms_ = all_atoms(v, 3);
  }

  FormulaPtr make(std::size_t sz) {
    if (sz == 1) return atoms_[uniform(atoms_.size())];
    const std::size_t choice = sz >= 3 ? uniform(5) : uniform(3);
    if (choice == 0) return neg(make(sz - 1));
    if (choice <= 2) {
      const int k = 1 + static_cast<int>(uniform(static_cast<std::size_t>(t_)));
      const int var = static_cast<int>(uniform(3));
      return uniform(2) == 0 ? exists(k, var, make(sz - 1)) : forall(k, var, make(sz - 1));
    }
    const std::size_t left = 1 + uniform(sz - 2);
    FormulaPtr l = make(left);
    FormulaPtr r = make(sz - left);
    return choice == 3 ? disj(l, r) : conj(l, r);
  }

  std::size_t uniform(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

 private:
  std::mt19937_64 rng_;
  int t_;
  std::vector<FormulaPtr> atoms_;
};

struct RootPair {
  int n, m;
  Family a, b;
};

std::vector<RootPair> root_pairs(int n_max, int m_max) {
  std::vector<RootPair> out;
  for (int n = 0; n <= n_max; ++n) {
    for (int m = n + 1; m <= m_max; ++m) {
      out.push_back({n, m, zero_root(linear_order(n, false)), zero_root(linear_order(m, false))});
    }
  }
  return out;
}

// The corpus of the lemma5 suite: every formula with the pairs it separates.
struct TreeCase {
  std::string key;
  FormulaPtr phi;
  int t;
  int n, m;
};

std::vector<TreeCase> lemma5_corpus(int n_max, int t_max, std::uint64_t seed) {
  std::vector<TreeCase> out;
  for (int t = 1; t <= t_max; ++t) {
    for (int n = 0; n <= n_max; ++n) {
      for (int m = n + 1; m <= std::min(n + 2, n_max + 2); ++m) {
        out.push_back({fmt("prop2 t=%d n=%02d m=%02d", t, n, m), upper_bound_formula(n, t), t, n, m});
      }
    }
  }
  const auto pairs = root_pairs(std::min(n_max, 6), std::min(n_max, 6) + 1);
  for (int t = 1; t <= t_max; ++t) {
    RandomFormulas gen(seed + static_cast<std::uint64_t>(t), t);
    int found = 0;
    for (int attempt = 0; attempt < 20000 && found < 10; ++attempt) {
      FormulaPtr phi = gen.make(3 + gen.uniform(8));
      for (const RootPair& rp : pairs) {
        if (distinguishes(*phi, rp.a, rp.b)) {
          out.push_back({fmt("random t=%d #%02d n=%02d m=%02d", t, found, rp.n, rp.m), phi, t, rp.n, rp.m});
          ++found;
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace

SuiteReport verify_lemma5_suite(const VerifyParams& p) {
  SuiteReport r{"lemma5", {}};
  const int n_max = pick(p.n_max, 8);
  const int t_max = pick(p.t_max, 3);
  SeparatorSearchLimits limits;
  for (const TreeCase& c : lemma5_corpus(n_max, t_max, p.seed)) {
    const Family a = zero_root(linear_order(c.n, false));
    const Family b = zero_root(linear_order(c.m, false));
    try {
      const StrategyTree tree = formula_to_tree(c.phi, a, b);
      const Lemma5Report rep = verify_lemma5(tree, c.t, limits);
      std::string detail = fmt("nodes=%zu violations=%zu", rep.rows.size(), rep.violations);
      for (const Lemma5Row& row : rep.rows) {
        if (!row.pass) {
          detail += " first=" + row.path + ":" + row.rule;
          break;
        }
      }
      if (!rep.complete) {
        r.cases.push_back({c.key, CaseStatus::Unknown, detail + " (separator search limit)"});
      } else {
        r.cases.push_back(verdict(c.key, rep.violations == 0, detail));
      }
    } catch (const ResourceLimitError& e) {
      r.cases.push_back({c.key, CaseStatus::Unknown, e.what()});
    }
  }
  finish(r);
  return r;
}

SuiteReport verify_lemma6(const VerifyParams& p) {
  SuiteReport r{"lemma6", {}};
  const int trials = pick(p.trials, 1000);
  const int n_max = pick(p.n_max, 12);
  const int k_max = pick(p.k_max, 3);
  std::mt19937_64 rng(p.seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  GameConfig cfg;
  cfg.m = 3;
  cfg.t = k_max;
  for (int trial = 0; trial < trials; ++trial) {
    for (;;) {
      const int n = uniform(1, n_max);
      const int k = uniform(1, std::min(k_max, n + 1));
      const int u = uniform(0, 2);
      const bool ex = uniform(0, 1) == 0;
      const StructurePtr sa = linear_order(uniform(std::max(0, n - 2), n), false);
      const StructurePtr sb = linear_order(uniform(std::max(0, n - 2), n), false);
      auto random_family = [&](const StructurePtr& s) {
        std::vector<Assignment> members;
        const int count = uniform(1, 3);
        for (int i = 0; i < count; ++i) {
          Assignment a;
          for (int v = 0; v < 3; ++v) a = a.with(v, uniform(0, s->size() - 1));
          members.push_back(a);
        }
        return Family(s, 0b111, members);
      };
      const Family left = random_family(sa);
      const Family right = random_family(sb);
      const Family& active = ex ? left : right;
      const Family& passive = ex ? right : left;
      if (active.structure().size() < k) {
        continue;
      }
      Move mv;
      mv.kind = ex ? MoveKind::Exists : MoveKind::Forall;
      mv.var = u;
      mv.k = k;
      for (std::size_t i = 0; i < active.size(); ++i) {
        std::vector<Element> pool(static_cast<std::size_t>(active.structure().size()));
        for (std::size_t e = 0; e < pool.size(); ++e) pool[e] = static_cast<Element>(e);
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(static_cast<std::size_t>(k));
        std::sort(pool.begin(), pool.end());
        mv.choices.push_back(pool);
      }
      for (std::size_t i = 0; i < passive.size(); ++i) {
        std::vector<Element> pool(static_cast<std::size_t>(passive.structure().size()));
        for (std::size_t e = 0; e < pool.size(); ++e) pool[e] = static_cast<Element>(e);
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(static_cast<std::size_t>(std::min<int>(uniform(0, k - 1), static_cast<int>(pool.size()))));
        std::sort(pool.begin(), pool.end());
        mv.exclusions.push_back(pool);
      }
      const std::vector<Family> kids = detail::child_families(left, right, mv, cfg);
      if (kids[0].empty() || kids[1].empty()) {
        continue;
      }
      const auto d1 = minimal_separator(kids[0], kids[1]);
      if (!d1) {
        continue;
      }
      const Point up = static_cast<Point>(static_cast<int>(Point::X) + u);
      const Separator d = quantifier_step_separator(d1->separator, up, k);
      const bool sep = is_separator(d, left, right);
      const std::int64_t w2 = weight_parts(d).squared();
      const std::int64_t w12 = d1->parts.squared();
      const bool weight = weight_le_plus(w2, w12, k);
      // Diagnostic: the same construction with k in place of k-1.
      const bool plus_one = is_separator(quantifier_step_separator(d1->separator, up, k + 1), left, right);
      r.cases.push_back(verdict(fmt("trial=%04d", trial), sep && weight,
                                fmt("%s k=%d var=%s |A|=%d |B|=%d w2=%lld w1_2=%lld separator=%d weight=%d plus_one=%d",
                                    ex ? "exists" : "forall", k, var_name(u).c_str(), left.structure().size() - 1,
                                    right.structure().size() - 1, static_cast<long long>(w2),
                                    static_cast<long long>(w12), sep ? 1 : 0, weight ? 1 : 0, plus_one ? 1 : 0)));
      break;
    }
  }
  finish(r);
  return r;
}

namespace {

// Checks every root pair phi separates; false when it separates none.
CaseResult check_root_bound(const std::string& key, const FormulaPtr& phi, int t, const std::vector<RootPair>& pairs,
                            const SeparatorSearchLimits& limits) {
  const std::size_t sz = size(*phi);
  int hits = 0;
  std::string bad;
  for (const RootPair& rp : pairs) {
    if (!distinguishes(*phi, rp.a, rp.b)) continue;
    ++hits;
    const bool direct = root_bound_holds(sz, rp.n, t);
    const bool via_separator = tree_size_bound(*phi, rp.a, rp.b, t, limits);
    if ((!direct || !via_separator) && bad.empty()) bad = fmt(" violated at n=%d m=%d", rp.n, rp.m);
  }
  CaseResult c = verdict(key, hits > 0 && bad.empty(), fmt("size=%zu pairs=%d", sz, hits) + bad);
  if (hits == 0) c.detail += " (separates no root pair)";
  return c;
}

}  // namespace

SuiteReport verify_thm6(const VerifyParams& p) {
  SuiteReport r{"thm6", {}};
  const int n_max = pick(p.n_max, 9);
  const int t_max = pick(p.t_max, 2);
  const int randoms = pick(p.trials, 100);
  const SeparatorSearchLimits limits;
  const auto pairs = root_pairs(n_max, n_max + 1);

  for (const RootPair& rp : pairs) {
    if (rp.m != rp.n + 1) continue;
    const std::string key = fmt("root n=%02d", rp.n);
    const bool sep = is_separator(root_separator(rp.n), rp.a, rp.b);
    const bool sqrt_n = weight_parts(root_separator(rp.n)).squared() == rp.n;
    try {
      const auto best = minimal_separator(rp.a, rp.b, limits);
      const bool minimal = best && best->parts.squared() == rp.n;
      r.cases.push_back(verdict(key, sep && sqrt_n && minimal,
                                fmt("separator=%d w2=%d minimal_w2=%lld", sep ? 1 : 0, sqrt_n ? rp.n : -1,
                                    best ? static_cast<long long>(best->parts.squared()) : -1LL)));
    } catch (const ResourceLimitError& e) {
      r.cases.push_back({key, CaseStatus::Unknown, e.what()});
    }
  }

  for (int t = 1; t <= t_max; ++t) {
    for (int n = 0; n <= n_max; ++n) {
      r.cases.push_back(check_root_bound(fmt("prop2 t=%d n=%02d", t, n), upper_bound_formula(n, t), t, pairs, limits));
    }
  }

  // Minimal formulas from the game, as far as the state budget allows.
  for (int t = 1; t <= t_max; ++t) {
    GameConfig cfg;
    cfg.m = 3;
    cfg.t = t;
    cfg.max_states = p.max_states > 0 ? p.max_states : 250'000;
    for (const RootPair& rp : pairs) {
      if (rp.m != rp.n + 1) continue;
      const std::string key = fmt("solver t=%d n=%02d m=%02d", t, rp.n, rp.m);
      try {
        const auto res = min_distinguishing_size(rp.a, rp.b, cfg, prop2_bound(rp.n, t));
        if (!res) {
          r.cases.push_back({key, CaseStatus::Fail, "no distinguishing formula within the Prop-2 bound"});
          continue;
        }
        CaseResult c = check_root_bound(key, res->formula, t, {rp}, limits);
        const bool game_bound = root_bound_holds(res->w, rp.n, t);
        c.detail = fmt("w=%zu ", res->w) + c.detail;
        if (!game_bound) c.status = CaseStatus::Fail;
        r.cases.push_back(c);
      } catch (const ResourceLimitError& e) {
        r.cases.push_back({key, CaseStatus::Unknown, e.what()});
      }
    }
  }

  const int per_t = (randoms + t_max - 1) / t_max;
  for (int t = 1; t <= t_max; ++t) {
    RandomFormulas gen(p.seed * 7919 + static_cast<std::uint64_t>(t), t);
    int found = 0;
    for (int attempt = 0; attempt < 200000 && found < per_t; ++attempt) {
      FormulaPtr phi = gen.make(2 + gen.uniform(11));
      bool any = false;
      for (const RootPair& rp : pairs) {
        if (distinguishes(*phi, rp.a, rp.b)) {
          any = true;
          break;
        }
      }
      if (!any) continue;
      r.cases.push_back(check_root_bound(fmt("random t=%d #%03d", t, found), phi, t, pairs, limits));
      r.cases.back().detail += " " + to_string(*phi);
      ++found;
    }
  }
  finish(r);
  return r;
}

namespace {

// Red/blue structures up to isomorphism (colour bit 0 = R, bit 1 = B).
std::vector<StructurePtr> two_colour_structures(int max_universe) {
  std::vector<StructurePtr> out;
  for (int n = 1; n <= max_universe; ++n) {
    std::vector<int> colours(static_cast<std::size_t>(n), 0);
    for (;;) {
      Structure s(n);
      s.add_relation("R", 1);
      s.add_relation("B", 1);
      for (int e = 0; e < n; ++e) {
        if (colours[static_cast<std::size_t>(e)] & 1) s.add_tuple("R", {e});
        if (colours[static_cast<std::size_t>(e)] & 2) s.add_tuple("B", {e});
      }
      out.push_back(std::make_shared<const Structure>(std::move(s)));
      // next nondecreasing colour sequence
      int i = n - 1;
      while (i >= 0 && colours[static_cast<std::size_t>(i)] == 3) --i;
      if (i < 0) break;
      const int c = colours[static_cast<std::size_t>(i)] + 1;
      for (int j = i; j < n; ++j) colours[static_cast<std::size_t>(j)] = c;
    }
  }
  return out;
}

// Sentence families, x-families with one or two members and single
// {x,y}-assignments.
std::vector<Family> charact_families(const std::vector<StructurePtr>& structures, VarMask dom) {
  std::vector<Family> out;
  for (const StructurePtr& s : structures) {
    if (dom == 0) {
      out.push_back(Family::sentence(s));
      continue;
    }
    if (dom == 0b11) {
      for (Element a = 0; a < s->size(); ++a) {
        for (Element b = 0; b < s->size(); ++b) out.push_back(Family(s, dom, {Assignment().with(0, a).with(1, b)}));
      }
      continue;
    }
    for (Element a = 0; a < s->size(); ++a) {
      for (Element b = a; b < s->size(); ++b) {
        std::vector<Assignment> members{Assignment().with(0, a)};
        if (b != a) members.push_back(Assignment().with(0, b));
        out.push_back(Family(s, dom, members));
      }
    }
  }
  return out;
}

}  // namespace

SuiteReport verify_charact(const VerifyParams& p) {
  SuiteReport r{"charact", {}};
  const int universe = pick(p.n_max, 3);
  const int t_max = pick(p.t_max, 2);
  const std::size_t w_max = static_cast<std::size_t>(pick(p.k_max, 4));
  const auto structures = two_colour_structures(universe);
  Vocabulary vocab;
  vocab.relations = {{"R", 1}, {"B", 1}};
  EnumerationLimits elimits;
  elimits.max_size = w_max;
  elimits.max_t = t_max;

  for (int m = 1; m <= 2; ++m) {
    for (int t = 1; t <= t_max; ++t) {
      const auto by_size = enumerate_formulas_by_size({m, t}, vocab, w_max, elimits);
      GameConfig cfg;
      cfg.m = m;
      cfg.t = t;
      if (p.max_states > 0) cfg.max_states = p.max_states;
      for (VarMask dom : {VarMask{0}, VarMask{1}, VarMask{3}}) {
        if (dom == 3 && (m < 2 || p.extra <= 0)) continue;
        const auto families = charact_families(structures, dom);
        const std::size_t nf = families.size();
        // Smallest size of a formula true on all of family i and false on all of family j.
        std::vector<std::size_t> best(nf * nf, w_max + 1);
        std::set<std::pair<std::vector<bool>, std::vector<bool>>> seen;
        for (std::size_t sz = 1; sz <= w_max; ++sz) {
          for (const FormulaPtr& f : by_size[sz]) {
            if ((free_variables(*f) & ~dom) != 0) continue;
            std::vector<bool> all_true(nf), all_false(nf);
            for (std::size_t i = 0; i < nf; ++i) {
              const auto vals = eval_family(*f, families[i]);
              all_true[i] = std::all_of(vals.begin(), vals.end(), [](bool v) { return v; });
              all_false[i] = std::none_of(vals.begin(), vals.end(), [](bool v) { return v; });
            }
            if (!seen.emplace(all_true, all_false).second) continue;
            for (std::size_t i = 0; i < nf; ++i) {
              if (!all_true[i]) continue;
              for (std::size_t j = 0; j < nf; ++j) {
                if (all_false[j]) best[i * nf + j] = std::min(best[i * nf + j], sz);
              }
            }
          }
        }
        Solver solver(cfg);
        for (std::size_t w = 1; w <= w_max; ++w) {
          std::size_t pairs = 0, wins = 0, discrepancies = 0, unknown = 0;
          std::string first;
          for (std::size_t i = 0; i < nf; ++i) {
            for (std::size_t j = 0; j < nf; ++j) {
              ++pairs;
              const Outcome o = solver.solve({w, families[i], families[j]});
              if (o == Outcome::Unknown) {
                ++unknown;
                continue;
              }
              const bool game = o == Outcome::SpoilerWins;
              wins += game ? 1 : 0;
              if (game != (best[i * nf + j] <= w)) {
                ++discrepancies;
                if (first.empty()) first = fmt(" first=(%zu,%zu)", i, j);
              }
            }
          }
          const std::string key = fmt("dom=%s m=%d t=%d w=%zu", dom == 0 ? "-" : dom == 1 ? "x" : "xy", m, t, w);
          const std::string detail =
              fmt("pairs=%zu spoiler=%zu discrepancies=%zu unknown=%zu", pairs, wins, discrepancies, unknown) + first;
          if (discrepancies == 0 && unknown > 0) {
            r.cases.push_back({key, CaseStatus::Unknown, detail});
          } else {
            r.cases.push_back(verdict(key, discrepancies == 0, detail));
          }
        }
      }
    }
  }
  finish(r);
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"charact", "lemma5", "lemma6", "prop2", "thm5", "thm6"};
  return names;
}

SuiteReport run_suite(const std::string& name, const VerifyParams& p) {
  if (name == "prop2") return verify_prop2(p);
  if (name == "thm5") return verify_thm5(p);
  if (name == "lemma5") return verify_lemma5_suite(p);
  if (name == "lemma6") return verify_lemma6(p);
  if (name == "thm6") return verify_thm6(p);
  if (name == "charact") return verify_charact(p);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace csgame
