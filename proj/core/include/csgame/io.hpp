#pragma once

#include <string>
#include <vector>

#include "csgame/ef_pebble.hpp"
#include "csgame/game.hpp"
#include "csgame/separators.hpp"
#include "csgame/structures.hpp"

namespace csgame {

// {"name": ..., "universe": [ids], "relations": {"R": [[id, ...], ...]},
//  "constants": {"min": id}}. "size": n may replace "universe" (ids 0..n-1).
// Throws ParseError on malformed input.
Structure structure_from_json(const std::string& text);
std::string structure_to_json(const Structure& s);

// A path, "linear:<n>" (with succ) or "linear:<n>:lt" (< only).
StructurePtr load_structure(const std::string& spec);

std::string tree_to_json(const StrategyTree& tree);
std::string separator_to_json(const Separator& d);

std::string transcript_line(const TranscriptEntry& e);
TranscriptEntry parse_transcript_line(const std::string& line);

std::string csv_escape(const std::string& field);

}  // namespace csgame
