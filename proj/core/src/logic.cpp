#include "csgame/logic.hpp"

#include <algorithm>

#include "csgame/errors.hpp"

namespace csgame {

namespace {

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

void require(const FormulaPtr& f) {
  if (!f) throw ContractError("null subformula");
}

}  // namespace

FormulaPtr atom(std::string relation, std::vector<Term> args) {
  if (relation.empty() || args.empty()) throw ContractError("an atom needs a relation and arguments");
  if ((relation == "=" || relation == "<") && args.size() != 2) {
    throw ContractError("'" + relation + "' is binary");
  }
  for (const Term& t : args) {
    if (t.type == Term::Type::Var) check_variable(t.var);
  }
  Formula f;
  f.kind = Kind::Atom;
  f.relation = std::move(relation);
  f.args = std::move(args);
  return make(std::move(f));
}

FormulaPtr eq(Term a, Term b) { return atom("=", {a, b}); }
FormulaPtr lt(Term a, Term b) { return atom("<", {a, b}); }

FormulaPtr neg(FormulaPtr f) {
  require(f);
  Formula n;
  n.kind = Kind::Not;
  n.left = std::move(f);
  return make(std::move(n));
}

namespace {

FormulaPtr binary(Kind kind, FormulaPtr a, FormulaPtr b) {
  require(a);
  require(b);
  Formula n;
  n.kind = kind;
  n.left = std::move(a);
  n.right = std::move(b);
  return make(std::move(n));
}

FormulaPtr quantifier(Kind kind, int k, int var, FormulaPtr body) {
  require(body);
  if (k < 1) throw ContractError("counting quantifiers need k >= 1");
  check_variable(var);
  Formula n;
  n.kind = kind;
  n.k = k;
  n.var = var;
  n.left = std::move(body);
  return make(std::move(n));
}

}  // namespace

FormulaPtr disj(FormulaPtr a, FormulaPtr b) { return binary(Kind::Or, std::move(a), std::move(b)); }
FormulaPtr conj(FormulaPtr a, FormulaPtr b) { return binary(Kind::And, std::move(a), std::move(b)); }
FormulaPtr exists(int k, int var, FormulaPtr body) { return quantifier(Kind::Exists, k, var, std::move(body)); }
FormulaPtr forall(int k, int var, FormulaPtr body) { return quantifier(Kind::Forall, k, var, std::move(body)); }

int compare(const Formula& a, const Formula& b) {
  if (&a == &b) return 0;
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  switch (a.kind) {
    case Kind::Atom: {
      if (int c = a.relation.compare(b.relation)) return c < 0 ? -1 : 1;
      if (a.args != b.args) return a.args < b.args ? -1 : 1;
      return 0;
    }
    case Kind::Not:
      return compare(*a.left, *b.left);
    case Kind::Or:
    case Kind::And:
      if (int c = compare(*a.left, *b.left)) return c;
      return compare(*a.right, *b.right);
    case Kind::Exists:
    case Kind::Forall:
      if (a.k != b.k) return a.k < b.k ? -1 : 1;
      if (a.var != b.var) return a.var < b.var ? -1 : 1;
      return compare(*a.left, *b.left);
  }
  return 0;
}

bool same(const Formula& a, const Formula& b) { return compare(a, b) == 0; }

std::size_t size(const Formula& f) {
  switch (f.kind) {
    case Kind::Atom:
      return 1;
    case Kind::Or:
    case Kind::And:
      return size(*f.left) + size(*f.right);
    default:
      return 1 + size(*f.left);
  }
}

Metrics metrics(const Formula& f) {
  Metrics m;
  switch (f.kind) {
    case Kind::Atom:
      for (const Term& t : f.args) {
        if (t.type == Term::Type::Var) m.variables |= var_bit(t.var);
      }
      return m;
    case Kind::Not:
      return metrics(*f.left);
    case Kind::Or:
    case Kind::And: {
      Metrics a = metrics(*f.left), b = metrics(*f.right);
      m.quantifier_rank = std::max(a.quantifier_rank, b.quantifier_rank);
      m.counting_rank = std::max(a.counting_rank, b.counting_rank);
      m.variables = a.variables | b.variables;
      return m;
    }
    case Kind::Exists:
    case Kind::Forall: {
      Metrics a = metrics(*f.left);
      m.quantifier_rank = a.quantifier_rank + 1;
      m.counting_rank = std::max(a.counting_rank, f.k);
      m.variables = a.variables | var_bit(f.var);
      return m;
    }
  }
  return m;
}

VarMask free_variables(const Formula& f) {
  switch (f.kind) {
    case Kind::Atom:
      return metrics(f).variables;
    case Kind::Not:
      return free_variables(*f.left);
    case Kind::Or:
    case Kind::And:
      return free_variables(*f.left) | free_variables(*f.right);
    case Kind::Exists:
    case Kind::Forall:
      return free_variables(*f.left) & ~var_bit(f.var);
  }
  return 0;
}

bool in_fragment(const Formula& f, const FragmentSpec& spec) {
  Metrics m = metrics(f);
  return m.counting_rank <= spec.t && m.variables < var_bit(spec.m);
}

}  // namespace csgame
