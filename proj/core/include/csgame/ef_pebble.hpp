#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "csgame/structures.hpp"

namespace csgame {

// Same atomic facts on the placed pebbles and the shared constants. A
// relation missing from one structure counts as empty there.
bool partial_isomorphism(const Structure& a, const Structure& b, const std::vector<Element>& pa,
                         const std::vector<Element>& pb);

struct EfLimits {
  int max_universe = 5;
  std::size_t max_states = 20'000'000;
};

// r-round m-pebble counting game with |S_1| <= t. Duplicator must keep a
// partial isomorphism after every round.
bool duplicator_wins_exhaustive(const Structure& a, const Structure& b, int r, int m, int t, EfLimits limits = {});

enum class Side { Left, Right };

// Pebbles a[p], b[p] (kUnassigned when off the board). The sentinels min = 0
// and max = length are implicit.
struct PebbleState {
  std::vector<Element> a;
  std::vector<Element> b;
  int round = 0;

  static PebbleState initial(int pebbles);
  PebbleState place(int pebble, Element ea, Element eb) const;
  bool operator==(const PebbleState&) const = default;
};

// Threshold (t+1)^(k-i) used after round i.
long long linear_threshold(int k, int i, int t);

struct LinearResponse {
  std::vector<Element> response;  // Duplicator's set, same size as S
  std::vector<Element> reply;     // reply[n] is Duplicator's answer in S when Spoiler picks response[n]
};

// Duplicator's reply to Spoiler putting set S (|S| <= t) on `side` for `pebble`
// in round state.round + 1. Orders are {0..len}. ContractError on a violated
// precondition.
LinearResponse duplicator_linear_move(const PebbleState& state, int len_a, int len_b, Side side,
                                      const std::vector<Element>& S, int pebble, int k, int t);

// The three invariants after round i: distances below the threshold agree,
// distances at or above it stay at or above it, and order types agree; over
// all placed pebbles and the min/max sentinels.
bool check_invariants(const PebbleState& state, int len_a, int len_b, int i, int k, int t);

struct LinearCheckReport {
  bool ok = true;
  std::size_t states = 0;     // distinct states visited
  std::size_t spoiler_moves = 0;
  std::string failure;        // first violation found
};

// Every Spoiler play for k rounds with |S| <= t on either side and any of the
// m pebbles, answered by duplicator_linear_move.
LinearCheckReport verify_linear_strategy(int len_a, int len_b, int k, int t, int m);

struct TranscriptEntry {
  int round = 0;
  Side side = Side::Left;
  std::vector<Element> S;
  int pebble = 0;
  std::vector<Element> response;
  Element spoiler_pick = 0;    // in the response set
  Element duplicator_pick = 0; // in S
  bool invariants = true;
};

// One game with Spoiler moves drawn from a seeded generator, Duplicator
// following duplicator_linear_move.
std::vector<TranscriptEntry> play_linear_game(int len_a, int len_b, int k, int t, int m, unsigned seed);

}  // namespace csgame
