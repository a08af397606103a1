#include "csgame/errors.hpp"
#include "csgame/game.hpp"
#include "csgame/io.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace csgame;

TEST_CASE("structure JSON round trip") {
  const Structure s = structure_from_json(R"({"name": "g", "universe": [10, 20, 30],
      "relations": {"E": [[10, 20], [20, 30]], "red": [10]}, "constants": {"min": 10}})");
  CHECK(s.size() == 3);
  CHECK(s.holds("E", std::vector<Element>{0, 1}));
  CHECK(s.holds("red", std::vector<Element>{0}));
  CHECK(s.constant("min") == 0);
  const Structure back = structure_from_json(structure_to_json(s));
  CHECK(back == s);
  CHECK(back.labels() == std::vector<int>{10, 20, 30});
}

TEST_CASE("structure JSON errors") {
  CHECK_THROWS_AS(structure_from_json("[1,2]"), ParseError);
  CHECK_THROWS_AS(structure_from_json("{\"size\": 0}"), ParseError);
  CHECK_THROWS_AS(structure_from_json(R"({"size": 2, "relations": {"R": [[5]]}})"), ParseError);
  CHECK_THROWS_AS(structure_from_json(R"({"size": 2, "relations": {"R": [[0], [0, 1]]}})"), ParseError);
  CHECK_THROWS_AS(structure_from_json(R"({"universe": [1, 1]})"), ParseError);
  CHECK_THROWS_AS(structure_from_json("{oops"), ParseError);
}

TEST_CASE("linear specs") {
  const StructurePtr a = load_structure("linear:4");
  CHECK(a->size() == 5);
  CHECK(a->relation("succ") != nullptr);
  CHECK(load_structure("linear:4:lt")->relation("succ") == nullptr);
  CHECK_THROWS_AS(load_structure("linear:x"), ParseError);
  CHECK_THROWS_AS(load_structure("/nonexistent/file.json"), ParseError);
  CHECK(load_structure(CSGAME_DATA_DIR "/example1_left.json")->size() == 3);
}

TEST_CASE("certificate JSON is deterministic") {
  const Family a = Family::sentence(load_structure(CSGAME_DATA_DIR "/example1_left.json"));
  const Family b = Family::sentence(load_structure(CSGAME_DATA_DIR "/example1_right.json"));
  GameConfig cfg;
  cfg.m = 1;
  cfg.t = 2;
  const auto r1 = min_distinguishing_size(a, b, cfg, 4);
  const auto r2 = min_distinguishing_size(a, b, cfg, 4);
  REQUIRE(r1);
  REQUIRE(r2);
  const std::string j = tree_to_json(r1->tree);
  CHECK(j == tree_to_json(r2->tree));
  const auto doc = nlohmann::json::parse(j);
  CHECK(doc["sl"] == "E>=2 x");
  CHECK(doc["children"].size() == 1);
  CHECK(doc["il"]["left"].size() == 1);
}

TEST_CASE("separator JSON keys") {
  Separator d;
  d.at(Point::Min, Point::Max) = 3;
  const auto doc = nlohmann::json::parse(separator_to_json(d));
  CHECK(doc.size() == 10);
  CHECK(doc["min-max"] == 3);
  CHECK(doc["y-z"] == 0);
}

TEST_CASE("transcript lines") {
  TranscriptEntry e;
  e.round = 2;
  e.side = Side::Right;
  e.S = {3, 5};
  e.pebble = 1;
  e.response = {4, 6};
  e.spoiler_pick = 6;
  e.duplicator_pick = 5;
  const TranscriptEntry back = parse_transcript_line(transcript_line(e));
  CHECK(back.round == 2);
  CHECK(back.side == Side::Right);
  CHECK(back.S == e.S);
  CHECK(back.response == e.response);
  CHECK(back.spoiler_pick == 6);
  CHECK(back.duplicator_pick == 5);
  CHECK_THROWS_AS(parse_transcript_line("{\"round\": 1}"), ParseError);
  CHECK_THROWS_AS(parse_transcript_line("not json"), ParseError);
}

TEST_CASE("csv escaping") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
}
