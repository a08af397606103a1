// csgame: minimal distinguishing sizes, verification suites and pebble games.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "csgame/ef_pebble.hpp"
#include "csgame/errors.hpp"
#include "csgame/game.hpp"
#include "csgame/io.hpp"
#include "csgame/logic.hpp"
#include "csgame/verify.hpp"
#include "json.hpp"

using namespace csgame;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kUnknown = 3 };

struct Options {
  std::string left, right;
  int vars = 2;
  int crank = 1;
  int max_size = 12;
  int rounds = 2;
  std::string format = "text";
  std::uint64_t seed = 1;
  std::size_t limit_states = 0;
  std::string out;
  std::string certificate;
  bool guarded = false;
  std::string suite;
  int n_max = 0, t_max = 0, k_max = 0, trials = 0, extra = -1;
  std::string replay;
  bool play_linear = false;
};

std::size_t state_limit(const Options& o, std::size_t fallback) {
  if (const char* env = std::getenv("CSGAME_LIMIT_STATES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) throw ParseError("CSGAME_LIMIT_STATES must be a positive integer", 0);
    return static_cast<std::size_t>(v);
  }
  return o.limit_states > 0 ? o.limit_states : fallback;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw ParseError("cannot write '" + o.out + "'", 0);
  f << text;
}

std::string render(const Options& o, const ordered_json& j, const std::vector<std::vector<std::string>>& rows) {
  if (o.format == "json") return j.dump(2) + "\n";
  std::ostringstream s;
  if (o.format == "csv") {
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << csv_escape(row[i]);
      s << "\n";
    }
    return s.str();
  }
  // text: header row becomes labels when there is one data row
  if (rows.size() == 2) {
    for (std::size_t i = 0; i < rows[0].size(); ++i) s << rows[0][i] << ": " << rows[1][i] << "\n";
    return s.str();
  }
  for (std::size_t r = 1; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < rows[r].size(); ++i) s << (i ? "  " : "") << rows[r][i];
    s << "\n";
  }
  return s.str();
}

int cmd_minsize(const Options& o) {
  const StructurePtr a = load_structure(o.left);
  const StructurePtr b = load_structure(o.right);
  GameConfig cfg;
  cfg.m = o.vars;
  cfg.t = o.crank;
  cfg.variant = o.guarded ? Variant::Guarded : Variant::Plain;
  cfg.max_states = state_limit(o, cfg.max_states);
  std::string result = "none", formula, size;
  int code = kFailure;
  try {
    const auto res = min_distinguishing_size(Family::sentence(a), Family::sentence(b), cfg,
                                             static_cast<std::size_t>(o.max_size));
    if (res) {
      result = "found";
      size = std::to_string(res->w);
      formula = to_string(*res->formula);
      code = kOk;
      if (!o.certificate.empty()) {
        std::ofstream f(o.certificate);
        if (!f) throw ParseError("cannot write '" + o.certificate + "'", 0);
        f << tree_to_json(res->tree) << "\n";
      }
    }
  } catch (const ResourceLimitError&) {
    result = "unknown";
    code = kUnknown;
  }
  ordered_json j;
  j["command"] = "minsize";
  j["left"] = o.left;
  j["right"] = o.right;
  j["vars"] = o.vars;
  j["crank"] = o.crank;
  j["variant"] = o.guarded ? "guarded" : "plain";
  j["max_size"] = o.max_size;
  j["result"] = result;
  if (code == kOk) {
    j["size"] = std::stoi(size);
    j["formula"] = formula;
    if (!o.certificate.empty()) j["certificate"] = o.certificate;
  }
  emit(o, render(o, j,
                 {{"result", "size", "formula", "certificate"},
                  {result, size, formula, code == kOk ? o.certificate : ""}}));
  return code;
}

int cmd_verify(const Options& o) {
  VerifyParams p;
  p.n_max = o.n_max;
  p.t_max = o.t_max;
  p.k_max = o.k_max;
  p.trials = o.trials;
  p.extra = o.extra;
  p.seed = o.seed;
  p.max_states = state_limit(o, 0);
  const SuiteReport rep = run_suite(o.suite, p);
  ordered_json j;
  j["command"] = "verify";
  j["suite"] = rep.suite;
  j["passed"] = rep.count(CaseStatus::Pass);
  j["failed"] = rep.count(CaseStatus::Fail);
  j["unknown"] = rep.count(CaseStatus::Unknown);
  j["cases"] = ordered_json::array();
  std::vector<std::vector<std::string>> rows{{"case", "status", "detail"}};
  for (const CaseResult& c : rep.cases) {
    j["cases"].push_back({{"case", c.key}, {"status", status_name(c.status)}, {"detail", c.detail}});
    rows.push_back({c.key, status_name(c.status), c.detail});
  }
  if (o.format == "text") {
    std::ostringstream s;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      if (rows[r][1] != "pass") s << rows[r][0] << "  " << rows[r][1] << "  " << rows[r][2] << "\n";
    }
    s << rep.suite << ": " << rep.count(CaseStatus::Pass) << " passed, " << rep.count(CaseStatus::Fail)
      << " failed, " << rep.count(CaseStatus::Unknown) << " unknown\n";
    emit(o, s.str());
  } else {
    emit(o, render(o, j, rows));
  }
  return rep.ok() ? kOk : kFailure;
}

int linear_length(const Structure& s, const std::string& what) {
  if (!s.is_linear_order()) throw ParseError(what + " is not a linear order", 0);
  return s.size() - 1;
}

int cmd_ef_play(const Options& o) {
  const StructurePtr a = load_structure(o.left);
  const StructurePtr b = load_structure(o.right);
  ordered_json j;
  j["command"] = "ef-play";
  j["left"] = o.left;
  j["right"] = o.right;
  j["rounds"] = o.rounds;
  j["vars"] = o.vars;
  j["crank"] = o.crank;

  if (o.play_linear) {
    const auto log = play_linear_game(linear_length(*a, "left"), linear_length(*b, "right"), o.rounds, o.crank,
                                      o.vars, static_cast<unsigned>(o.seed));
    std::string text;
    bool ok = true;
    for (const TranscriptEntry& e : log) {
      text += transcript_line(e) + "\n";
      ok = ok && e.invariants;
    }
    emit(o, text);
    return ok ? kOk : kFailure;
  }

  if (!o.replay.empty()) {
    const int la = linear_length(*a, "left");
    const int lb = linear_length(*b, "right");
    std::ifstream in(o.replay);
    if (!in) throw ParseError("cannot open '" + o.replay + "'", 0);
    PebbleState state = PebbleState::initial(o.vars);
    bool invariants = true, matches = true;
    int rounds = 0;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const TranscriptEntry e = parse_transcript_line(line);
      if (e.pebble < 0 || e.pebble >= o.vars) throw ParseError("pebble index out of range", 0);
      if (e.round != state.round + 1) throw ParseError("rounds out of sequence", 0);
      try {
        const LinearResponse r = duplicator_linear_move(state, la, lb, e.side, e.S, e.pebble, o.rounds, o.crank);
        std::size_t pos = 0;
        while (pos < r.response.size() && r.response[pos] != e.spoiler_pick) ++pos;
        matches = matches && r.response == e.response && pos < r.response.size() &&
                  r.reply[pos] == e.duplicator_pick;
      } catch (const ContractError&) {
        matches = false;
      }
      const Element on_a = e.side == Side::Left ? e.duplicator_pick : e.spoiler_pick;
      const Element on_b = e.side == Side::Left ? e.spoiler_pick : e.duplicator_pick;
      if (on_a < 0 || on_a > la || on_b < 0 || on_b > lb) throw ParseError("pick outside the orders", 0);
      state = state.place(e.pebble, on_a, on_b);
      invariants = invariants && check_invariants(state, la, lb, state.round, o.rounds, o.crank);
      ++rounds;
    }
    j["mode"] = "replay";
    j["rounds_replayed"] = rounds;
    j["invariants"] = invariants;
    j["matches_strategy"] = matches;
    emit(o, render(o, j,
                   {{"rounds_replayed", "invariants", "matches_strategy"},
                    {std::to_string(rounds), invariants ? "true" : "false", matches ? "true" : "false"}}));
    return invariants ? kOk : kFailure;
  }

  EfLimits limits;
  limits.max_universe = 8;
  limits.max_states = state_limit(o, limits.max_states);
  std::string winner;
  int code = kOk;
  try {
    winner = duplicator_wins_exhaustive(*a, *b, o.rounds, o.vars, o.crank, limits) ? "duplicator" : "spoiler";
  } catch (const ResourceLimitError&) {
    winner = "unknown";
    code = kUnknown;
  }
  j["mode"] = "exhaustive";
  j["winner"] = winner;
  emit(o, render(o, j, {{"winner"}, {winner}}));
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting-logic succinctness games"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--format", o.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
    c->add_option("--seed", o.seed, "random seed");
    c->add_option("--limit-states", o.limit_states, "solver state budget (CSGAME_LIMIT_STATES overrides)");
    c->add_option("--out", o.out, "write the report here instead of stdout");
  };
  auto structures = [&](CLI::App* c) {
    c->add_option("--left", o.left, "structure file or linear:<n>[:lt]")->required();
    c->add_option("--right", o.right, "structure file or linear:<n>[:lt]")->required();
    c->add_option("--vars", o.vars, "number of variables m")->check(CLI::Range(1, kMaxVariables));
    c->add_option("--crank", o.crank, "counting rank t")->check(CLI::PositiveNumber);
  };

  CLI::App* minsize = app.add_subcommand("minsize", "smallest distinguishing sentence via the game");
  structures(minsize);
  common(minsize);
  minsize->add_option("--max-size", o.max_size, "largest size tried")->check(CLI::PositiveNumber);
  minsize->add_option("--certificate", o.certificate, "write the winning strategy tree as JSON");
  minsize->add_flag("--guarded", o.guarded, "guarded fragment over E");

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", o.suite, "charact | lemma5 | lemma6 | prop2 | thm5 | thm6")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  common(verify);
  verify->add_option("--max-size", o.n_max, "largest order or universe");
  verify->add_option("--crank", o.t_max, "sweep counting rank 1..t");
  verify->add_option("--rounds", o.k_max, "rounds (thm5), quantifier width (lemma6) or budget (charact)");
  verify->add_option("--trials", o.trials, "random cases");
  verify->add_option("--extra", o.extra, "thm5: lengths up to (t+1)^k + extra");

  CLI::App* ef = app.add_subcommand("ef-play", "counting pebble game");
  structures(ef);
  common(ef);
  ef->add_option("--rounds", o.rounds, "rounds r")->check(CLI::NonNegativeNumber);
  ef->add_option("--replay", o.replay, "check a JSON-lines transcript against the invariants");
  ef->add_flag("--play-linear", o.play_linear, "play the linear-order strategy and print the transcript");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  try {
    if (*minsize) return cmd_minsize(o);
    if (*verify) return cmd_verify(o);
    return cmd_ef_play(o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kUnknown;
  }
}
