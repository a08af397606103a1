#pragma once

#include <functional>
#include <vector>

#include "csgame/game.hpp"

namespace csgame::detail {

// Elements a quantifier may pick for this member: the whole universe, or the
// guard's neighbours in the guarded variant.
std::vector<Element> candidates(const Structure& s, const Assignment& a, int guard, const GameConfig& cfg);

// k-subsets of a sorted candidate list, in lexicographic order.
std::vector<std::vector<Element>> subsets(const std::vector<Element>& pool, int k);
// All subsets of size <= limit.
std::vector<std::vector<Element>> subsets_up_to(const std::vector<Element>& pool, int limit);

// Active side: member i extended by every element of choices[i].
Family active_extend(const Family& f, int var, const std::vector<std::vector<Element>>& choices);
// Passive side: every candidate extension except exclusions[i]; members with
// fewer than k candidates contribute nothing.
Family passive_extend(const Family& f, int var, int k, const std::vector<std::vector<Element>>& exclusions,
                      int guard, const GameConfig& cfg);

// Children without budget checks; ContractError on an illegal shape.
std::vector<Family> child_families(const Family& left, const Family& right, const Move& move,
                                   const GameConfig& cfg);

// Calls fn with one index per option list; stops early when fn returns false.
bool for_each_product(const std::vector<std::size_t>& sizes, const std::function<bool(const std::vector<std::size_t>&)>& fn);

int max_k(const GameConfig& cfg, int universe);

}  // namespace csgame::detail
