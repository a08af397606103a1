#include "csgame/ef_pebble.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <unordered_map>

#include "csgame/errors.hpp"

namespace csgame {

namespace {

struct TermRef {
  int pebble = -1;       // >= 0: a pebble
  std::string constant;  // otherwise a constant name
};

Element value(const Structure& s, const TermRef& t, const std::vector<Element>& p) {
  return t.pebble >= 0 ? p[static_cast<std::size_t>(t.pebble)] : *s.constant(t.constant);
}

}  // namespace

bool partial_isomorphism(const Structure& a, const Structure& b, const std::vector<Element>& pa,
                         const std::vector<Element>& pb) {
  if (pa.size() != pb.size()) throw ContractError("pebble vectors differ in length");
  std::vector<TermRef> terms;
  for (std::size_t p = 0; p < pa.size(); ++p) {
    bool ha = pa[p] != kUnassigned, hb = pb[p] != kUnassigned;
    if (ha != hb) throw ContractError("pebble placed on only one structure");
    if (ha) terms.push_back({static_cast<int>(p), {}});
  }
  for (const auto& [name, e] : a.constants()) {
    if (b.constant(name)) terms.push_back({-1, name});
  }
  const std::size_t n = terms.size();
  std::vector<Element> va(n), vb(n);
  for (std::size_t i = 0; i < n; ++i) {
    va[i] = value(a, terms[i], pa);
    vb[i] = value(b, terms[i], pb);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((va[i] == va[j]) != (vb[i] == vb[j])) return false;
    }
  }
  Vocabulary vocab = Vocabulary::merge(a.vocabulary(), b.vocabulary());
  if (n == 0) return true;
  for (const auto& [name, arity] : vocab.relations) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
    std::vector<Element> ta(idx.size()), tb(idx.size());
    while (true) {
      for (std::size_t d = 0; d < idx.size(); ++d) {
        ta[d] = va[idx[d]];
        tb[d] = vb[idx[d]];
      }
      if (a.holds(name, ta) != b.holds(name, tb)) return false;
      std::size_t d = 0;
      while (d < idx.size() && ++idx[d] == n) idx[d++] = 0;
      if (d == idx.size()) break;
    }
  }
  return true;
}

namespace {

class EfSolver {
 public:
  EfSolver(const Structure& a, const Structure& b, int m, int t, EfLimits limits)
      : a_(a), b_(b), m_(m), t_(t), limits_(limits) {}

  bool wins(const std::vector<Element>& pa, const std::vector<Element>& pb, int rounds) {
    if (rounds == 0) return true;
    std::string key = encode(pa, pb, rounds);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (++states_ > limits_.max_states) throw ResourceLimitError("pebble game state limit reached");
    bool result = true;
    const int na = a_.size(), nb = b_.size();
    for (int p = 0; p < m_ && result; ++p) {
      // good[x][y]: placing pebble p on (x in A, y in B) keeps Duplicator alive.
      std::vector<std::vector<char>> good(static_cast<std::size_t>(na), std::vector<char>(static_cast<std::size_t>(nb)));
      for (int x = 0; x < na; ++x) {
        for (int y = 0; y < nb; ++y) {
          std::vector<Element> qa = pa, qb = pb;
          qa[static_cast<std::size_t>(p)] = x;
          qb[static_cast<std::size_t>(p)] = y;
          good[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
              partial_isomorphism(a_, b_, qa, qb) && wins(qa, qb, rounds - 1);
        }
      }
      // Spoiler's S on A survives iff |{y : some x in S is good with y}| >= |S|.
      result = all_sets_survive(good, na, nb, false) && all_sets_survive(good, na, nb, true);
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  bool all_sets_survive(const std::vector<std::vector<char>>& good, int na, int nb, bool spoiler_on_b) const {
    const int ns = spoiler_on_b ? nb : na;
    const int no = spoiler_on_b ? na : nb;
    auto ok = [&](int s, int o) {
      return spoiler_on_b ? good[static_cast<std::size_t>(o)][static_cast<std::size_t>(s)]
                          : good[static_cast<std::size_t>(s)][static_cast<std::size_t>(o)];
    };
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << ns); ++mask) {
      int size = __builtin_popcount(mask);
      if (size > t_) continue;
      int covered = 0;
      for (int o = 0; o < no; ++o) {
        for (int s = 0; s < ns; ++s) {
          if ((mask >> s) & 1 && ok(s, o)) {
            ++covered;
            break;
          }
        }
      }
      if (covered < size) return false;
    }
    return true;
  }

  static std::string encode(const std::vector<Element>& pa, const std::vector<Element>& pb, int rounds) {
    std::string k(1, static_cast<char>(rounds));
    for (Element e : pa) k.push_back(static_cast<char>(e + 1));
    for (Element e : pb) k.push_back(static_cast<char>(e + 1));
    return k;
  }

  const Structure& a_;
  const Structure& b_;
  int m_, t_;
  EfLimits limits_;
  std::size_t states_ = 0;
  std::unordered_map<std::string, bool> memo_;
};

}  // namespace

bool duplicator_wins_exhaustive(const Structure& a, const Structure& b, int r, int m, int t, EfLimits limits) {
  if (r < 0 || m < 1 || t < 1) throw ContractError("need r >= 0, m >= 1, t >= 1");
  if (a.size() > limits.max_universe || b.size() > limits.max_universe || m > kMaxVariables) {
    throw ResourceLimitError("pebble game limits exceeded");
  }
  std::vector<Element> pa(static_cast<std::size_t>(m), kUnassigned), pb = pa;
  if (!partial_isomorphism(a, b, pa, pb)) return false;
  EfSolver solver(a, b, m, t, limits);
  return solver.wins(pa, pb, r);
}

PebbleState PebbleState::initial(int pebbles) {
  PebbleState s;
  s.a.assign(static_cast<std::size_t>(pebbles), kUnassigned);
  s.b = s.a;
  return s;
}

PebbleState PebbleState::place(int pebble, Element ea, Element eb) const {
  PebbleState s = *this;
  s.a.at(static_cast<std::size_t>(pebble)) = ea;
  s.b.at(static_cast<std::size_t>(pebble)) = eb;
  ++s.round;
  return s;
}

long long linear_threshold(int k, int i, int t) {
  long long v = 1;
  for (int r = i; r < k; ++r) v *= t + 1;
  return v;
}

namespace {

constexpr int kMaxPoints = kMaxVariables + 2;
constexpr int kMaxSet = 16;

// Sentinels plus placed pebbles other than `skip`, seen from the side whose
// coordinates are xs.
int collect(const std::vector<Element>& xs, const std::vector<Element>& ys, int len_x, int len_y, int skip,
            Element* px, Element* py) {
  int n = 0;
  px[n] = 0;
  py[n++] = 0;
  px[n] = len_x;
  py[n++] = len_y;
  for (std::size_t q = 0; q < xs.size(); ++q) {
    if (static_cast<int>(q) == skip || xs[q] == kUnassigned) continue;
    px[n] = xs[q];
    py[n++] = ys[q];
  }
  return n;
}

// out[i] is the response to sorted s[i]; returns false when no far slot is left.
bool respond(const Element* px, const Element* py, int npts, const Element* s, int ns, long long T, long long Tn,
             Element* out) {
  bool far[kMaxSet];
  int lo_of[kMaxSet];
  int hi_of[kMaxSet];
  for (int i = 0; i < ns; ++i) {
    far[i] = false;
    int lo = -1, hi = -1, hit = -1;
    for (int p = 0; p < npts; ++p) {
      if (px[p] == s[i]) hit = p;
      if (px[p] < s[i] && (lo < 0 || px[p] > px[lo])) lo = p;
      if (px[p] > s[i] && (hi < 0 || px[p] < px[hi])) hi = p;
    }
    if (hit >= 0) {
      out[i] = py[hit];
      continue;
    }
    lo_of[i] = lo;
    hi_of[i] = hi;
    const long long d = px[hi] - px[lo];
    // Equal intervals (always so below T) are copied exactly.
    if (d < T || py[hi] - py[lo] == d || s[i] - px[lo] < Tn) {
      out[i] = py[lo] + (s[i] - px[lo]);
    } else if (px[hi] - s[i] < Tn) {
      out[i] = py[hi] - (px[hi] - s[i]);
    } else {
      far[i] = true;
    }
  }
  for (int i = 0; i < ns; ++i) {
    if (!far[i]) continue;
    long long y = py[lo_of[i]] + Tn;
    const long long end = py[hi_of[i]] - Tn;
    // Earlier far picks of the same interval sit at the bottom of the range.
    for (int j = 0; j < i; ++j) {
      if (far[j] && lo_of[j] == lo_of[i] && out[j] >= y) y = out[j] + 1;
    }
    if (y > end) return false;
    out[i] = static_cast<Element>(y);
  }
  return true;
}

void check_linear_preconditions(const PebbleState& state, int len_a, int len_b, int k, int t) {
  if (k < 1 || t < 1) throw ContractError("need k >= 1 and t >= 1");
  const long long need = linear_threshold(k, 0, t);
  if (len_a < need || len_b < need) throw ContractError("orders shorter than (t+1)^k");
  if (state.a.size() != state.b.size() || state.a.size() > static_cast<std::size_t>(kMaxVariables)) {
    throw ContractError("bad pebble vectors");
  }
  if (state.round < 0 || state.round >= k) throw ContractError("round counter outside 0..k-1");
}

}  // namespace

LinearResponse duplicator_linear_move(const PebbleState& state, int len_a, int len_b, Side side,
                                      const std::vector<Element>& S, int pebble, int k, int t) {
  check_linear_preconditions(state, len_a, len_b, k, t);
  if (S.empty() || static_cast<int>(S.size()) > t || S.size() > static_cast<std::size_t>(kMaxSet)) {
    throw ContractError("Spoiler's set must have 1..t elements");
  }
  if (pebble < 0 || pebble >= static_cast<int>(state.a.size())) throw ContractError("pebble index out of range");
  const bool left = side == Side::Left;
  const int len_x = left ? len_a : len_b, len_y = left ? len_b : len_a;
  std::vector<Element> sorted = S;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw ContractError("S has repeated elements");
  if (sorted.front() < 0 || sorted.back() > len_x) throw ContractError("S outside the order");
  Element px[kMaxPoints], py[kMaxPoints], out[kMaxSet];
  int npts = collect(left ? state.a : state.b, left ? state.b : state.a, len_x, len_y, pebble, px, py);
  if (!respond(px, py, npts, sorted.data(), static_cast<int>(sorted.size()), linear_threshold(k, state.round, t),
               linear_threshold(k, state.round + 1, t), out)) {
    throw ContractError("no room for a far response; the invariants were already broken");
  }
  LinearResponse r;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    r.response.push_back(out[i]);
    r.reply.push_back(sorted[i]);
  }
  return r;
}

namespace {

bool invariants_fast(const Element* pa, const Element* pb, int n, long long T) {
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      long long da = pa[p] - pa[q], db = pb[p] - pb[q];
      if ((da > 0) != (db > 0) || (da < 0) != (db < 0)) return false;
      if (da < 0) da = -da;
      if (db < 0) db = -db;
      if ((da < T || db < T) && da != db) return false;
    }
  }
  return true;
}

}  // namespace

bool check_invariants(const PebbleState& state, int len_a, int len_b, int i, int k, int t) {
  if (state.a.size() != state.b.size() || state.a.size() > static_cast<std::size_t>(kMaxVariables)) return false;
  Element pa[kMaxPoints], pb[kMaxPoints];
  for (std::size_t q = 0; q < state.a.size(); ++q) {
    bool ha = state.a[q] != kUnassigned, hb = state.b[q] != kUnassigned;
    if (ha != hb) return false;
    if (ha && (state.a[q] < 0 || state.a[q] > len_a || state.b[q] < 0 || state.b[q] > len_b)) return false;
  }
  int n = collect(state.a, state.b, len_a, len_b, -1, pa, pb);
  return invariants_fast(pa, pb, n, linear_threshold(k, i, t));
}

namespace {

using Pairs = std::vector<std::pair<Element, Element>>;

std::string encode_pairs(Pairs p) {
  std::sort(p.begin(), p.end());
  std::string k;
  for (auto [x, y] : p) {
    k.push_back(static_cast<char>(x));
    k.push_back(static_cast<char>(y));
  }
  return k;
}

std::string describe_state(const Pairs& placed) {
  std::string s = "{";
  for (std::size_t i = 0; i < placed.size(); ++i) {
    if (i) s += ",";
    s += "(" + std::to_string(placed[i].first) + "," + std::to_string(placed[i].second) + ")";
  }
  return s + "}";
}

}  // namespace

LinearCheckReport verify_linear_strategy(int len_a, int len_b, int k, int t, int m) {
  check_linear_preconditions(PebbleState::initial(m), len_a, len_b, k, t);
  if (m < 1) throw ContractError("need at least one pebble");
  if (t > kMaxSet) throw ContractError("t too large");
  LinearCheckReport report;
  if (!check_invariants(PebbleState::initial(m), len_a, len_b, 0, k, t)) {
    report.ok = false;
    report.failure = "initial state violates the invariants";
    return report;
  }
  std::vector<Pairs> frontier{Pairs{}};
  std::set<std::string> seen{encode_pairs({})};
  report.states = 1;
  for (int i = 0; i < k && report.ok; ++i) {
    const long long T = linear_threshold(k, i, t), Tn = linear_threshold(k, i + 1, t);
    std::vector<Pairs> next;
    // Outcomes depend only on the pebbles left in place.
    std::set<std::string> done_rest;
    for (const Pairs& placed : frontier) {
      // Pebble choices up to symmetry: each distinct placed pair, or a fresh pebble.
      std::vector<int> moves;
      for (std::size_t q = 0; q < placed.size(); ++q) {
        if (q == 0 || placed[q] != placed[q - 1]) moves.push_back(static_cast<int>(q));
      }
      if (static_cast<int>(placed.size()) < m) moves.push_back(-1);
      for (int mv : moves) {
        Pairs rest;
        for (std::size_t q = 0; q < placed.size(); ++q) {
          if (static_cast<int>(q) != mv) rest.push_back(placed[q]);
        }
        if (!done_rest.insert(encode_pairs(rest)).second) continue;
        for (Side side : {Side::Left, Side::Right}) {
          const bool left = side == Side::Left;
          const int len_x = left ? len_a : len_b, len_y = left ? len_b : len_a;
          Element px[kMaxPoints], py[kMaxPoints];
          int npts = 0;
          px[npts] = 0;
          py[npts++] = 0;
          px[npts] = len_x;
          py[npts++] = len_y;
          for (auto [x, y] : rest) {
            px[npts] = left ? x : y;
            py[npts++] = left ? y : x;
          }
          Element s[kMaxSet], out[kMaxSet];
          // Every S of size 1..t in increasing order.
          auto visit = [&](auto&& self, int size, Element from) -> bool {
            if (size > 0) {
              ++report.spoiler_moves;
              if (!respond(px, py, npts, s, size, T, Tn, out)) {
                report.ok = false;
                report.failure = "no far slot in round " + std::to_string(i + 1) + " at " + describe_state(placed);
                return false;
              }
              for (int n = 0; n < size; ++n) {
                Element ea = left ? s[n] : out[n], eb = left ? out[n] : s[n];
                Element qa[kMaxPoints], qb[kMaxPoints];
                int nq = 0;
                qa[nq] = 0;
                qb[nq++] = 0;
                qa[nq] = len_a;
                qb[nq++] = len_b;
                for (auto [x, y] : rest) {
                  qa[nq] = x;
                  qb[nq++] = y;
                }
                qa[nq] = ea;
                qb[nq++] = eb;
                if (!invariants_fast(qa, qb, nq, Tn)) {
                  report.ok = false;
                  report.failure = "invariants fail after round " + std::to_string(i + 1) + " from " +
                                   describe_state(placed) + " placing (" + std::to_string(ea) + "," +
                                   std::to_string(eb) + ")";
                  return false;
                }
                if (i + 1 < k) {
                  Pairs np = rest;
                  np.emplace_back(ea, eb);
                  std::sort(np.begin(), np.end());
                  if (seen.insert(encode_pairs(np)).second) next.push_back(std::move(np));
                }
              }
            }
            if (size == t) return true;
            for (Element e = from; e <= len_x; ++e) {
              s[size] = e;
              if (!self(self, size + 1, e + 1)) return false;
            }
            return true;
          };
          if (!visit(visit, 0, 0)) return report;
        }
      }
    }
    report.states += next.size();
    frontier = std::move(next);
  }
  return report;
}

std::vector<TranscriptEntry> play_linear_game(int len_a, int len_b, int k, int t, int m, unsigned seed) {
  check_linear_preconditions(PebbleState::initial(m), len_a, len_b, k, t);
  std::mt19937 rng(seed);
  PebbleState state = PebbleState::initial(m);
  std::vector<TranscriptEntry> out;
  for (int i = 0; i < k; ++i) {
    TranscriptEntry e;
    e.round = i + 1;
    e.side = rng() % 2 ? Side::Right : Side::Left;
    e.pebble = static_cast<int>(rng() % static_cast<unsigned>(m));
    const int len_x = e.side == Side::Left ? len_a : len_b;
    int size = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(t, len_x + 1)));
    std::set<Element> pick;
    while (static_cast<int>(pick.size()) < size) pick.insert(static_cast<Element>(rng() % static_cast<unsigned>(len_x + 1)));
    e.S.assign(pick.begin(), pick.end());
    LinearResponse r = duplicator_linear_move(state, len_a, len_b, e.side, e.S, e.pebble, k, t);
    e.response = r.response;
    std::size_t n = rng() % r.response.size();
    e.spoiler_pick = r.response[n];
    e.duplicator_pick = r.reply[n];
    if (e.side == Side::Left) {
      state = state.place(e.pebble, e.duplicator_pick, e.spoiler_pick);
    } else {
      state = state.place(e.pebble, e.spoiler_pick, e.duplicator_pick);
    }
    e.invariants = check_invariants(state, len_a, len_b, i + 1, k, t);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace csgame
