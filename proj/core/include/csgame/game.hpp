#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "csgame/logic.hpp"
#include "csgame/structures.hpp"

namespace csgame {

inline constexpr int kUnboundedRank = std::numeric_limits<int>::max();

enum class Variant { Plain, Guarded };

struct GameConfig {
  int m = 2;
  int t = 1;  // kUnboundedRank for plain C_m
  Variant variant = Variant::Plain;
  std::string guard_relation = "E";  // binary relation for the guarded variant
  std::size_t max_states = 2'000'000;  // expanded positions before giving up

  void validate() const;
};

struct GamePosition {
  std::size_t w = 1;
  Family left;
  Family right;
};

enum class MoveKind { Not, Or, And, Exists, Forall };

// One Spoiler move. For Or/And, side[i] tells where member i of the split
// family goes: 1 = first child, 2 = second, 3 = both (covers arise from
// formula-built trees). For quantifiers the active side is left for Exists
// and right for Forall; choices/exclusions are indexed by member.
struct Move {
  MoveKind kind = MoveKind::Not;
  std::size_t u = 0, v = 0;
  std::vector<int> side;
  int var = 0;
  int k = 1;
  int guard = -1;
  std::vector<std::vector<Element>> choices;
  std::vector<std::vector<Element>> exclusions;
};

std::vector<Move> legal_moves(const GamePosition& p, const GameConfig& cfg);
// Throws ContractError when the move is not legal at p.
std::vector<GamePosition> apply_move(const GamePosition& p, const Move& move, const GameConfig& cfg);
std::string describe(const Move& move);

// Extended syntax tree. Leaves carry their distinguishing atom; internal nodes
// carry the move leading to their children. budget is 0 for trees built from
// formulas.
struct StrategyNode {
  Kind kind = Kind::Atom;
  FormulaPtr atom;
  int k = 0, var = 0, guard = -1;
  std::size_t budget = 0;
  Family left;
  Family right;
  Move move;
  std::vector<StrategyNode> children;
};
using StrategyTree = StrategyNode;

std::size_t node_count(const StrategyTree& tree);
FormulaPtr strategy_to_formula(const StrategyTree& tree, const GameConfig& cfg = {});
// Extended syntax tree for a formula distinguishing (a, b); ContractError otherwise.
StrategyTree formula_to_tree(const FormulaPtr& f, const Family& a, const Family& b);
// Every leaf atom distinguishes its labels, every node's children follow by
// one legal move, and budgets (when present) are consistent.
bool validate_tree(const StrategyTree& tree, const GameConfig& cfg, std::string* why = nullptr);

enum class Outcome { SpoilerWins, DuplicatorWins, Unknown };
const char* outcome_name(Outcome o);

class Solver {
 public:
  explicit Solver(GameConfig cfg);
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  // Memo persists across calls. Unknown when the state limit is hit.
  Outcome solve(const GamePosition& p);
  // Winning strategy tree, or nullopt when Spoiler does not win.
  std::optional<StrategyTree> certificate(const GamePosition& p);

  std::size_t states_expanded() const;
  const GameConfig& config() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Throws ResourceLimitError when the state limit is reached.
bool spoiler_wins(const GamePosition& p, const GameConfig& cfg, StrategyTree* certificate = nullptr);

struct MinSizeResult {
  std::size_t w = 0;
  FormulaPtr formula;
  StrategyTree tree;
};
std::optional<MinSizeResult> min_distinguishing_size(const Family& a, const Family& b, const GameConfig& cfg,
                                                     std::size_t cap);

}  // namespace csgame
