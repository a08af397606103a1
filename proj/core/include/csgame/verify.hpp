#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace csgame {

enum class CaseStatus { Pass, Fail, Unknown };
const char* status_name(CaseStatus s);

struct CaseResult {
  std::string key;
  CaseStatus status = CaseStatus::Pass;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CaseResult> cases;  // sorted by key
  std::size_t count(CaseStatus s) const;
  bool ok() const { return count(CaseStatus::Fail) == 0; }
};

// Zero or negative fields take the suite default.
struct VerifyParams {
  int n_max = 0;     // largest order / universe
  int t_max = 0;     // counting rank sweep 1..t_max
  int k_max = 0;     // rounds (thm5) or quantifier width (lemma6)
  int trials = 0;    // random cases (lemma6, thm6)
  int extra = -1;    // thm5: lengths in [(t+1)^k, (t+1)^k + extra];
                     // charact: > 0 adds single {x,y}-assignments
  std::uint64_t seed = 1;
  std::size_t max_states = 0;  // game state budget; 0 = suite default
};

SuiteReport verify_prop2(const VerifyParams& p);
SuiteReport verify_thm5(const VerifyParams& p);
SuiteReport verify_lemma5_suite(const VerifyParams& p);
SuiteReport verify_lemma6(const VerifyParams& p);
SuiteReport verify_thm6(const VerifyParams& p);
SuiteReport verify_charact(const VerifyParams& p);

const std::vector<std::string>& suite_names();
// std::invalid_argument for an unknown suite.
SuiteReport run_suite(const std::string& name, const VerifyParams& p);

}  // namespace csgame
