// Acceptance checks, one PASS/FAIL line per criterion.
//   acceptance            run all
//   acceptance N [N...]   run the listed criteria
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>

#include "csgame/ef_pebble.hpp"
#include "csgame/errors.hpp"
#include "csgame/game.hpp"
#include "csgame/io.hpp"
#include "csgame/logic.hpp"
#include "csgame/separators.hpp"
#include "csgame/structures.hpp"
#include "csgame/verify.hpp"

using namespace csgame;

namespace {

// Pinned limits. Comparisons other than runtime are exact.
constexpr double kCharactSeconds = 300.0;
constexpr double kThm5Seconds = 600.0;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string counts(const SuiteReport& r) {
  return std::to_string(r.count(CaseStatus::Pass)) + " pass, " + std::to_string(r.count(CaseStatus::Fail)) +
         " fail, " + std::to_string(r.count(CaseStatus::Unknown)) + " unknown";
}

std::string first_failure(const SuiteReport& r) {
  for (const CaseResult& c : r.cases) {
    if (c.status == CaseStatus::Fail) return "; first failure " + c.key + ": " + c.detail;
  }
  return "";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Game vs enumeration on two-colour structures.
Verdict c1() {
  const auto t0 = std::chrono::steady_clock::now();
  const SuiteReport r = verify_charact({});
  const double s = seconds_since(t0);
  std::size_t pairs = 0, disagreements = 0;
  for (const CaseResult& c : r.cases) {
    std::size_t p = 0, sp = 0, d = 0, u = 0;
    if (std::sscanf(c.detail.c_str(), "pairs=%zu spoiler=%zu discrepancies=%zu unknown=%zu", &p, &sp, &d, &u) == 4) {
      pairs += p;
      disagreements += d + u;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu (pair, m, t, w) checks, %zu disagreements, %.1fs (limit %.0fs)", pairs,
                disagreements, s, kCharactSeconds);
  return {r.cases.size() == 32 && r.ok() && r.count(CaseStatus::Unknown) == 0 && disagreements == 0 &&
              s <= kCharactSeconds,
          buf};
}

// 2. The red/blue sample pair.
Verdict c2() {
  const Family a = Family::sentence(load_structure(CSGAME_DATA_DIR "/example1_left.json"));
  const Family b = Family::sentence(load_structure(CSGAME_DATA_DIR "/example1_right.json"));
  Vocabulary v;
  v.relations = {{"red", 1}, {"blue", 1}};
  const auto by_size = enumerate_formulas_by_size({1, 2}, v, 3);
  std::size_t oracle = 0;
  for (std::size_t sz = 1; sz <= 3 && oracle == 0; ++sz) {
    for (const FormulaPtr& f : by_size[sz]) {
      if (free_variables(*f) == 0 && distinguishes(*f, a, b)) {
        oracle = sz;
        break;
      }
    }
  }
  GameConfig cfg;
  cfg.m = 1;
  cfg.t = 2;
  const auto res = min_distinguishing_size(a, b, cfg, 4);
  if (!res) return {false, "solver found nothing up to size 4"};
  const FormulaPtr x1 = parse("E>=2 x. (red(x) & blue(x))");
  const FormulaPtr x2 = parse("E>=2 x. (blue(x) & red(x))");
  const bool shape = same(*res->formula, *x1) || same(*res->formula, *x2);
  return {oracle == 3 && res->w == 3 && shape && distinguishes(*res->formula, a, b),
          "oracle minimum " + std::to_string(oracle) + ", game " + std::to_string(res->w) + ", formula " +
              to_string(*res->formula)};
}

// 3. Exclusion-form k-multiplication vs the literal selection reading.
Verdict c3() {
  std::size_t cases = 0, mismatches = 0;
  for (int n = 1; n <= 5; ++n) {
    auto s = std::make_shared<const Structure>(n);
    std::vector<Family> bases{Family::sentence(s), Family::empty(s, 0b1)};
    std::vector<Element> pool;
    for (Element e = 0; e < n; ++e) pool.push_back(e);
    for (int mask = 1; mask < (1 << n); ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) > 3) continue;
      std::vector<Assignment> members;
      for (Element e = 0; e < n; ++e)
        if (mask >> e & 1) members.push_back(Assignment().with(0, e));
      bases.push_back(Family(s, 0b1, members));
    }
    for (const Family& base : bases) {
      for (int var : {0, 1}) {
        if (base.dom() == 0 && var == 1) continue;
        for (int k = 1; k <= 2; ++k) {
          std::set<std::vector<Assignment>> fast;
          // every exclusion vector with |exclusions[i]| <= k-1
          std::vector<std::vector<Element>> options{{}};
          if (k == 2)
            for (Element e : pool) options.push_back({e});
          std::vector<std::size_t> idx(base.size(), 0);
          for (;;) {
            std::vector<std::vector<Element>> ex;
            for (std::size_t i = 0; i < base.size(); ++i) ex.push_back(options[idx[i]]);
            fast.insert(k_multiply(base, var, k, ex).members());
            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == options.size()) idx[i++] = 0;
            if (i == idx.size()) break;
          }
          std::set<std::vector<Assignment>> naive;
          for (const Family& f : enumerate_k_multiplications_naive(base, var, k)) naive.insert(f.members());
          ++cases;
          if (fast != naive) ++mismatches;
        }
      }
    }
  }
  return {mismatches == 0, std::to_string(cases) + " (family, variable, k) cases, " + std::to_string(mismatches) +
                               " set mismatches"};
}

// 4. Upper bound formulas.
Verdict c4() {
  const SuiteReport r = verify_prop2({});
  return {r.cases.size() == 630 && r.ok(), counts(r) + first_failure(r)};
}

// 5. Lower bound on the corpus.
Verdict c5() {
  const SuiteReport r = verify_thm6({});
  std::size_t random = 0, prop2 = 0, solver = 0;
  for (const CaseResult& c : r.cases) {
    if (c.status != CaseStatus::Pass) continue;
    random += c.key.rfind("random", 0) == 0;
    prop2 += c.key.rfind("prop2", 0) == 0;
    solver += c.key.rfind("solver", 0) == 0;
  }
  return {r.ok() && random == 100 && prop2 == 20,
          counts(r) + " (" + std::to_string(prop2) + " upper-bound, " + std::to_string(solver) + " solver, " +
              std::to_string(random) + " random formulas checked)" + first_failure(r)};
}

// 6. Node inequalities.
Verdict c6() {
  const SuiteReport r = verify_lemma5_suite({});
  return {r.ok() && r.count(CaseStatus::Pass) >= 50, counts(r) + " trees" + first_failure(r)};
}

// 7. Quantifier-step separators.
Verdict c7() {
  const SuiteReport r = verify_lemma6({});
  std::size_t rescued = 0;
  for (const CaseResult& c : r.cases) {
    if (c.status == CaseStatus::Fail && c.detail.find("plus_one=1") != std::string::npos) ++rescued;
  }
  return {r.cases.size() >= 1000 && r.ok(), counts(r) + " instances; with k in place of k-1, " +
                                                std::to_string(rescued) + " of the failures separate" +
                                                first_failure(r)};
}

// 8. Linear-order strategy.
Verdict c8() {
  const auto t0 = std::chrono::steady_clock::now();
  const SuiteReport r = verify_thm5({});
  const double s = seconds_since(t0);
  char buf[96];
  std::snprintf(buf, sizeof buf, " order pairs, %.1fs (limit %.0fs)", s, kThm5Seconds);
  return {r.ok() && r.count(CaseStatus::Unknown) == 0 && s <= kThm5Seconds, counts(r) + buf + first_failure(r)};
}

// Counting types of rank r with counts capped at t; equal ids mean no
// sentence of rank <= r in C^t_m tells the structures apart.
class TypeOracle {
 public:
  TypeOracle(int m, int t, std::vector<std::pair<std::string, int>> vocab) : m_(m), t_(t), vocab_(std::move(vocab)) {}

  int sentence_type(const Structure& s, int r) {
    memo_.clear();
    return type(s, std::vector<Element>(static_cast<std::size_t>(m_), kUnassigned), r);
  }

 private:
  int type(const Structure& s, const std::vector<Element>& peb, int r) {
    std::vector<int> key = peb;
    key.push_back(r);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<int> code{r};
    for (int p = 0; p < m_; ++p) code.push_back(peb[static_cast<std::size_t>(p)] == kUnassigned ? 0 : 1);
    for (int p = 0; p < m_; ++p)
      for (int q = 0; q < m_; ++q) {
        if (peb[static_cast<std::size_t>(p)] == kUnassigned || peb[static_cast<std::size_t>(q)] == kUnassigned) continue;
        code.push_back(peb[static_cast<std::size_t>(p)] == peb[static_cast<std::size_t>(q)]);
      }
    for (const auto& [name, arity] : vocab_) {
      std::vector<int> idx(static_cast<std::size_t>(arity), 0);
      for (;;) {
        std::vector<Element> tuple;
        bool ok = true;
        for (int i : idx) {
          ok = ok && peb[static_cast<std::size_t>(i)] != kUnassigned;
          tuple.push_back(peb[static_cast<std::size_t>(i)]);
        }
        if (ok) code.push_back(s.holds(name, tuple));
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == m_) idx[i++] = 0;
        if (i == idx.size()) break;
      }
    }
    if (r > 0) {
      for (int j = 0; j < m_; ++j) {
        std::map<int, int> hist;
        for (Element e = 0; e < s.size(); ++e) {
          std::vector<Element> next = peb;
          next[static_cast<std::size_t>(j)] = e;
          ++hist[type(s, next, r - 1)];
        }
        code.push_back(-1);
        for (auto [id, c] : hist) {
          code.push_back(id);
          code.push_back(std::min(c, t_));
        }
      }
    }
    auto [it, fresh] = ids_.emplace(code, static_cast<int>(ids_.size()));
    (void)fresh;
    memo_[key] = it->second;
    return it->second;
  }

  int m_, t_;
  std::vector<std::pair<std::string, int>> vocab_;
  std::map<std::vector<int>, int> ids_;  // shared across structures
  std::map<std::vector<int>, int> memo_;
};

std::vector<StructurePtr> colour_structures(int max_n) {
  std::vector<StructurePtr> out;
  for (int n = 1; n <= max_n; ++n) {
    std::vector<int> c(static_cast<std::size_t>(n), 0);
    for (;;) {
      auto s = std::make_shared<Structure>(n);
      s->add_relation("R", 1);
      s->add_relation("B", 1);
      for (int e = 0; e < n; ++e) {
        if (c[static_cast<std::size_t>(e)] & 1) s->add_tuple("R", {e});
        if (c[static_cast<std::size_t>(e)] & 2) s->add_tuple("B", {e});
      }
      out.push_back(s);
      int i = n - 1;
      while (i >= 0 && c[static_cast<std::size_t>(i)] == 3) --i;
      if (i < 0) break;
      const int v = c[static_cast<std::size_t>(i)] + 1;
      for (int j = i; j < n; ++j) c[static_cast<std::size_t>(j)] = v;
    }
  }
  return out;
}

std::vector<StructurePtr> random_graphs(int count, int max_n, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<StructurePtr> out;
  for (int i = 0; i < count; ++i) {
    const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_n));
    auto s = std::make_shared<Structure>(n);
    s->add_relation("E", 2);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (rng() % 3 == 0) s->add_tuple("E", {a, b});
    out.push_back(s);
  }
  return out;
}

// 9. EF game vs rank-bounded equivalence.
Verdict c9() {
  struct Class {
    std::vector<StructurePtr> structures;
    std::vector<std::pair<std::string, int>> vocab;
  };
  const std::vector<Class> classes{{colour_structures(4), {{"R", 1}, {"B", 1}}},
                                   {random_graphs(40, 4, 17), {{"E", 2}}}};
  std::size_t checks = 0, disagreements = 0, enum_checks = 0, enum_disagreements = 0;
  EfLimits limits;
  limits.max_universe = 4;
  for (const Class& cl : classes) {
    for (int m = 1; m <= 2; ++m) {
      for (int t = 1; t <= 2; ++t) {
        TypeOracle oracle(m, t, cl.vocab);
        for (int r = 0; r <= 2; ++r) {
          std::vector<int> types;
          for (const auto& s : cl.structures) types.push_back(oracle.sentence_type(*s, r));
          for (std::size_t i = 0; i < cl.structures.size(); ++i) {
            for (std::size_t j = i; j < cl.structures.size(); ++j) {
              const bool dup = duplicator_wins_exhaustive(*cl.structures[i], *cl.structures[j], r, m, t, limits);
              ++checks;
              if (dup != (types[i] == types[j])) ++disagreements;
            }
          }
          // a small enumerated sentence of rank <= r that separates forces a Spoiler win
          if (cl.vocab.size() != 2) continue;
          Vocabulary v;
          for (const auto& [name, arity] : cl.vocab) v.relations[name] = arity;
          const auto formulas = enumerate_formulas({m, t}, v, 4);
          std::vector<std::vector<bool>> truth;
          for (const FormulaPtr& f : formulas) {
            if (free_variables(*f) != 0 || metrics(*f).quantifier_rank > r) continue;
            std::vector<bool> row;
            for (const auto& s : cl.structures) row.push_back(eval(*s, {}, *f));
            truth.push_back(std::move(row));
          }
          for (std::size_t i = 0; i < cl.structures.size(); ++i) {
            for (std::size_t j = i + 1; j < cl.structures.size(); ++j) {
              bool separated = false;
              for (const auto& row : truth) separated = separated || row[i] != row[j];
              if (!separated) continue;
              ++enum_checks;
              if (duplicator_wins_exhaustive(*cl.structures[i], *cl.structures[j], r, m, t, limits)) {
                ++enum_disagreements;
              }
            }
          }
        }
      }
    }
  }
  return {disagreements == 0 && enum_disagreements == 0,
          std::to_string(checks) + " (pair, r, m, t) type checks, " + std::to_string(disagreements) +
              " disagreements; " + std::to_string(enum_checks) + " enumerated separations, " +
              std::to_string(enum_disagreements) + " missed by the game"};
}

const std::map<int, std::pair<const char*, std::function<Verdict()>>>& criteria() {
  static const std::map<int, std::pair<const char*, std::function<Verdict()>>> all{
      {1, {"characterization", c1}},  {2, {"red/blue pair", c2}},      {3, {"k-multiplication", c3}},
      {4, {"upper bound", c4}},       {5, {"lower bound", c5}},        {6, {"node inequalities", c6}},
      {7, {"quantifier step", c7}},   {8, {"linear strategy", c8}},    {9, {"EF vs rank", c9}},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (const auto& [n, c] : criteria()) which.push_back(n);
  int failed = 0;
  for (int n : which) {
    auto it = criteria().find(n);
    if (it == criteria().end()) {
      std::fprintf(stderr, "unknown criterion %d\n", n);
      return 2;
    }
    Verdict o{false, ""};
    try {
      o = it->second.second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d %-18s %s  %s\n", n, it->second.first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
