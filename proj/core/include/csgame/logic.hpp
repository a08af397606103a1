#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "csgame/structures.hpp"

namespace csgame {

struct Term {
  enum class Type { Var, Min, Max };
  Type type = Type::Var;
  int var = 0;  // only for Type::Var

  static Term variable(int j) { return {Type::Var, j}; }
  static Term min() { return {Type::Min, 0}; }
  static Term max() { return {Type::Max, 0}; }

  bool operator==(const Term&) const = default;
  auto operator<=>(const Term&) const = default;
};

enum class Kind { Atom, Not, Or, And, Exists, Forall };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable AST node. Atoms: relation is "=", "<" or a relation name.
struct Formula {
  Kind kind = Kind::Atom;
  std::string relation;
  std::vector<Term> args;
  int k = 0;    // quantifiers
  int var = 0;  // quantifiers
  FormulaPtr left;   // Not, quantifier body, binary left
  FormulaPtr right;  // binary right
};

struct FragmentSpec {
  int m = 2;  // variables x_0..x_{m-1}
  int t = 1;  // counting rank bound
};

FormulaPtr atom(std::string relation, std::vector<Term> args);
FormulaPtr eq(Term a, Term b);
FormulaPtr lt(Term a, Term b);
FormulaPtr neg(FormulaPtr f);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr exists(int k, int var, FormulaPtr body);
FormulaPtr forall(int k, int var, FormulaPtr body);

// Structural identity and a total order consistent with it.
bool same(const Formula& a, const Formula& b);
int compare(const Formula& a, const Formula& b);

// Throws ParseError; with a fragment, variables >= m and k > t are rejected.
FormulaPtr parse(std::string_view text, std::optional<FragmentSpec> fragment = std::nullopt);
std::string to_string(const Formula& f);
std::string var_name(int j);

std::size_t size(const Formula& f);

struct Metrics {
  int quantifier_rank = 0;
  int counting_rank = 0;
  VarMask variables = 0;  // every variable occurring, bound or free
};
Metrics metrics(const Formula& f);
VarMask free_variables(const Formula& f);
bool in_fragment(const Formula& f, const FragmentSpec& spec);

// Throws EvaluationError on a free variable outside dom(alpha) or a term
// naming a constant the structure lacks.
bool eval(const Structure& s, const Assignment& alpha, const Formula& f);
// Plain recursive evaluation; slow, kept as a cross-check for eval.
bool eval_naive(const Structure& s, const Assignment& alpha, const Formula& f);
// Truth value for every member, in member order.
std::vector<bool> eval_family(const Formula& f, const Family& family);

// Every member of a satisfies f and every member of b satisfies ~f.
bool distinguishes(const Formula& f, const Family& a, const Family& b);

// Atoms over the relations of vocab, the variables x_0..x_{m-1} and the
// constants min/max (when present in vocab), plus equality on all term pairs.
std::vector<FormulaPtr> all_atoms(const Vocabulary& vocab, int m);
std::optional<FormulaPtr> atomic_distinguisher(const Family& a, const Family& b);

struct EnumerationLimits {
  std::size_t max_size = 5;
  int max_m = 2;
  int max_t = 2;
  std::size_t max_formulas = 5'000'000;
};

// by_size[s] holds every fragment formula of size exactly s (index 0 unused),
// each once up to structural identity.
std::vector<std::vector<FormulaPtr>> enumerate_formulas_by_size(const FragmentSpec& spec,
                                                                const Vocabulary& vocab, std::size_t w,
                                                                EnumerationLimits limits = {});
std::vector<FormulaPtr> enumerate_formulas(const FragmentSpec& spec, const Vocabulary& vocab,
                                           std::size_t w, EnumerationLimits limits = {});

}  // namespace csgame
