#include <algorithm>

#include "csgame/errors.hpp"
#include "csgame/logic.hpp"

namespace csgame {

std::vector<FormulaPtr> all_atoms(const Vocabulary& vocab, int m) {
  std::vector<Term> terms;
  for (int j = 0; j < m; ++j) terms.push_back(Term::variable(j));
  if (vocab.constants.count("min")) terms.push_back(Term::min());
  if (vocab.constants.count("max")) terms.push_back(Term::max());

  std::vector<FormulaPtr> out;
  for (const Term& a : terms) {
    for (const Term& b : terms) out.push_back(eq(a, b));
  }
  for (const auto& [name, arity] : vocab.relations) {
    if (name == "=") continue;
    std::vector<std::size_t> digits(static_cast<std::size_t>(arity), 0);
    if (terms.empty()) break;
    while (true) {
      std::vector<Term> args;
      for (std::size_t d : digits) args.push_back(terms[d]);
      out.push_back(atom(name, std::move(args)));
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == terms.size()) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  }
  return out;
}

std::optional<FormulaPtr> atomic_distinguisher(const Family& a, const Family& b) {
  if (a.dom() != b.dom()) throw ContractError("families have different domains");
  Vocabulary vocab = Vocabulary::merge(a.structure().vocabulary(), b.structure().vocabulary());
  // Constants are usable only when both structures interpret them.
  Vocabulary shared = Vocabulary::intersect(a.structure().vocabulary(), b.structure().vocabulary());
  vocab.constants = shared.constants;
  int m = 0;
  for (int j = 0; j < kMaxVariables; ++j) {
    if (a.dom() & var_bit(j)) m = j + 1;
  }
  auto uses_constant = [](const Formula& f) {
    return std::any_of(f.args.begin(), f.args.end(), [](const Term& t) { return t.type != Term::Type::Var; });
  };
  const auto atoms = all_atoms(vocab, m);
  for (bool constants : {false, true}) {
    for (const FormulaPtr& f : atoms) {
      if (uses_constant(*f) != constants || (free_variables(*f) & ~a.dom()) != 0) continue;
      if (distinguishes(*f, a, b)) return f;
    }
  }
  return std::nullopt;
}

std::vector<std::vector<FormulaPtr>> enumerate_formulas_by_size(const FragmentSpec& spec,
                                                                const Vocabulary& vocab, std::size_t w,
                                                                EnumerationLimits limits) {
  if (spec.m < 1 || spec.t < 1) throw ContractError("fragment needs m >= 1 and t >= 1");
  if (w > limits.max_size || spec.m > limits.max_m || spec.t > limits.max_t) {
    throw ResourceLimitError("formula enumeration limits exceeded");
  }
  std::vector<std::vector<FormulaPtr>> by_size(w + 1);
  std::size_t total = 0;
  auto push = [&](std::size_t s, FormulaPtr f) {
    if (++total > limits.max_formulas) throw ResourceLimitError("too many formulas");
    by_size[s].push_back(std::move(f));
  };
  if (w == 0) return by_size;
  for (FormulaPtr& f : all_atoms(vocab, spec.m)) push(1, std::move(f));
  for (std::size_t s = 2; s <= w; ++s) {
    for (const FormulaPtr& f : by_size[s - 1]) push(s, neg(f));
    for (int k = 1; k <= spec.t; ++k) {
      for (int j = 0; j < spec.m; ++j) {
        for (const FormulaPtr& f : by_size[s - 1]) {
          push(s, exists(k, j, f));
          push(s, forall(k, j, f));
        }
      }
    }
    for (std::size_t a = 1; a < s; ++a) {
      for (const FormulaPtr& f : by_size[a]) {
        for (const FormulaPtr& g : by_size[s - a]) {
          push(s, disj(f, g));
          push(s, conj(f, g));
        }
      }
    }
  }
  return by_size;
}

std::vector<FormulaPtr> enumerate_formulas(const FragmentSpec& spec, const Vocabulary& vocab, std::size_t w,
                                           EnumerationLimits limits) {
  std::vector<FormulaPtr> out;
  for (auto& level : enumerate_formulas_by_size(spec, vocab, w, limits)) {
    for (auto& f : level) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace csgame
