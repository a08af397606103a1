#include "csgame/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "csgame/errors.hpp"
#include "json.hpp"

namespace csgame {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw ParseError(msg, 0); }

}  // namespace

Structure structure_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  if (!j.is_object()) bad("structure must be a JSON object");
  std::vector<int> ids;
  if (j.contains("universe")) {
    if (!j["universe"].is_array()) bad("universe must be an array of integers");
    for (const auto& e : j["universe"]) {
      if (!e.is_number_integer()) bad("universe must be an array of integers");
      ids.push_back(e.get<int>());
    }
  } else if (j.contains("size")) {
    if (!j["size"].is_number_integer() || j["size"].get<int>() < 1) bad("size must be a positive integer");
    for (int i = 0; i < j["size"].get<int>(); ++i) ids.push_back(i);
  } else {
    bad("structure needs 'universe' or 'size'");
  }
  if (ids.empty()) bad("universe must be nonempty");
  std::map<int, Element> pos;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!pos.emplace(ids[i], static_cast<Element>(i)).second) bad("duplicate element id " + std::to_string(ids[i]));
  }
  auto element = [&](const json& e) {
    if (!e.is_number_integer()) bad("element ids must be integers");
    auto it = pos.find(e.get<int>());
    if (it == pos.end()) bad("unknown element id " + std::to_string(e.get<int>()));
    return it->second;
  };
  Structure s(static_cast<int>(ids.size()), j.value("name", std::string{}));
  s.set_labels(ids);
  if (j.contains("relations")) {
    if (!j["relations"].is_object()) bad("relations must be an object");
    for (const auto& [name, tuples] : j["relations"].items()) {
      if (!tuples.is_array()) bad("relation '" + name + "' must list tuples");
      int arity = -1;
      if (j.contains("arities") && j["arities"].contains(name)) arity = j["arities"][name].get<int>();
      for (const auto& t : tuples) {
        std::vector<Element> tuple;
        if (t.is_array()) {
          for (const auto& e : t) tuple.push_back(element(e));
        } else {
          tuple.push_back(element(t));  // unary shorthand
        }
        if (arity < 0) arity = static_cast<int>(tuple.size());
        if (static_cast<int>(tuple.size()) != arity) bad("relation '" + name + "' has tuples of different lengths");
      }
      if (arity < 1) bad("cannot infer the arity of empty relation '" + name + "'; add it under 'arities'");
      try {
        s.add_relation(name, arity);
        for (const auto& t : tuples) {
          std::vector<Element> tuple;
          if (t.is_array()) {
            for (const auto& e : t) tuple.push_back(element(e));
          } else {
            tuple.push_back(element(t));
          }
          s.add_tuple(name, tuple);
        }
      } catch (const ContractError& e) {
        bad(e.what());
      }
    }
  }
  if (j.contains("constants")) {
    if (!j["constants"].is_object()) bad("constants must be an object");
    for (const auto& [name, e] : j["constants"].items()) s.set_constant(name, element(e));
  }
  return s;
}

std::string structure_to_json(const Structure& s) {
  json j;
  j["name"] = s.name();
  j["universe"] = s.labels();
  json rels = json::object();
  json arities = json::object();
  for (const auto& [name, rel] : s.relations()) {
    json tuples = json::array();
    for (const auto& t : rel.tuples()) {
      json row = json::array();
      for (Element e : t) row.push_back(s.labels()[static_cast<std::size_t>(e)]);
      tuples.push_back(row);
    }
    rels[name] = tuples;
    arities[name] = rel.arity();
  }
  j["relations"] = rels;
  j["arities"] = arities;
  json consts = json::object();
  for (const auto& [name, e] : s.constants()) consts[name] = s.labels()[static_cast<std::size_t>(e)];
  j["constants"] = consts;
  return j.dump(2);
}

StructurePtr load_structure(const std::string& spec) {
  const std::string prefix = "linear:";
  if (spec.rfind(prefix, 0) == 0) {
    std::string rest = spec.substr(prefix.size());
    bool succ = true;
    if (rest.size() > 3 && rest.substr(rest.size() - 3) == ":lt") {
      succ = false;
      rest.resize(rest.size() - 3);
    }
    if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos || rest.size() > 6) {
      bad("expected linear:<n> or linear:<n>:lt");
    }
    return linear_order(std::stoi(rest), succ);
  }
  std::ifstream in(spec);
  if (!in) bad("cannot open '" + spec + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return std::make_shared<const Structure>(structure_from_json(buf.str()));
}

namespace {

json family_json(const Family& f) {
  json out = json::array();
  if (!f.structure_ptr()) return out;
  for (const Assignment& a : f.members()) {
    json m = json::object();
    for (int v : a.domain_list()) m[var_name(v)] = f.structure().labels()[static_cast<std::size_t>(a.get(v))];
    out.push_back(m);
  }
  return out;
}

json node_json(const StrategyTree& n) {
  json j;
  switch (n.kind) {
    case Kind::Atom: j["sl"] = n.atom ? to_string(*n.atom) : ""; break;
    case Kind::Not: j["sl"] = "~"; break;
    case Kind::Or: j["sl"] = "|"; break;
    case Kind::And: j["sl"] = "&"; break;
    case Kind::Exists:
    case Kind::Forall:
      j["sl"] = std::string(n.kind == Kind::Exists ? "E>=" : "A>=") + std::to_string(n.k) + " " + var_name(n.var);
      if (n.guard >= 0) j["guard"] = var_name(n.guard);
      break;
  }
  if (n.budget > 0) j["budget"] = n.budget;
  j["il"] = {{"left", family_json(n.left)}, {"right", family_json(n.right)}};
  json kids = json::array();
  for (const auto& c : n.children) kids.push_back(node_json(c));
  j["children"] = kids;
  return j;
}

Side side_from(const std::string& s) {
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  bad("side must be 'left' or 'right'");
}

}  // namespace

std::string tree_to_json(const StrategyTree& tree) { return node_json(tree).dump(2); }

std::string separator_to_json(const Separator& d) {
  json j = json::object();
  for (int i = 0; i < kSeparatorPairs; ++i) j[pair_name(i)] = d.value[static_cast<std::size_t>(i)];
  return j.dump();
}

std::string transcript_line(const TranscriptEntry& e) {
  json j;
  j["round"] = e.round;
  j["side"] = e.side == Side::Left ? "left" : "right";
  j["S"] = e.S;
  j["index"] = e.pebble;
  j["response"] = e.response;
  j["picks"] = {e.spoiler_pick, e.duplicator_pick};
  j["invariants"] = e.invariants;
  return j.dump();
}

TranscriptEntry parse_transcript_line(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid transcript line: ") + e.what(), e.byte);
  }
  TranscriptEntry e;
  try {
    e.round = j.at("round").get<int>();
    e.side = side_from(j.at("side").get<std::string>());
    e.S = j.at("S").get<std::vector<Element>>();
    e.pebble = j.at("index").get<int>();
    e.response = j.value("response", std::vector<Element>{});
    auto picks = j.at("picks").get<std::vector<Element>>();
    if (picks.size() != 2) bad("picks must hold the Spoiler and Duplicator elements");
    e.spoiler_pick = picks[0];
    e.duplicator_pick = picks[1];
    e.invariants = j.value("invariants", true);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("malformed transcript line: ") + ex.what(), 0);
  }
  return e;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace csgame
