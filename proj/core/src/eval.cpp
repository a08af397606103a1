#include <array>
#include <cstdint>

#include "csgame/errors.hpp"
#include "csgame/logic.hpp"

namespace csgame {

namespace {

Element resolve(const Structure& s, const Term& t, const Assignment& alpha) {
  switch (t.type) {
    case Term::Type::Var:
      if (!alpha.has(t.var)) throw EvaluationError("free variable " + var_name(t.var) + " is unassigned");
      return alpha.get(t.var);
    case Term::Type::Min:
    case Term::Type::Max: {
      const char* name = t.type == Term::Type::Min ? "min" : "max";
      auto c = s.constant(name);
      if (!c) throw EvaluationError(std::string("structure has no constant '") + name + "'");
      return *c;
    }
  }
  return 0;
}

bool eval_atom(const Structure& s, const Assignment& alpha, const Formula& f) {
  Element buf[8];
  std::vector<Element> big;
  Element* vals = buf;
  if (f.args.size() > 8) {
    big.resize(f.args.size());
    vals = big.data();
  }
  for (std::size_t i = 0; i < f.args.size(); ++i) vals[i] = resolve(s, f.args[i], alpha);
  if (f.relation == "=") return vals[0] == vals[1];
  return s.holds(f.relation, std::span<const Element>(vals, f.args.size()));
}

// Table evaluation: one truth value per assignment of the variables in `vars`
// (compressed to digits base n).
class TableEvaluator {
 public:
  TableEvaluator(const Structure& s, VarMask vars) : s_(s), n_(static_cast<std::size_t>(s.size())) {
    digit_of_.fill(-1);
    for (int j = 0; j < kMaxVariables; ++j) {
      if (vars & var_bit(j)) {
        digit_of_[j] = static_cast<int>(list_.size());
        list_.push_back(j);
      }
    }
    cells_ = 1;
    stride_.assign(list_.size(), 0);
    for (std::size_t d = 0; d < list_.size(); ++d) {
      stride_[d] = cells_;
      cells_ *= n_;
    }
  }

  std::size_t cells() const { return cells_; }

  std::vector<char> run(const Formula& f) const {
    switch (f.kind) {
      case Kind::Atom: {
        std::vector<char> out(cells_);
        Assignment a;
        for (std::size_t idx = 0; idx < cells_; ++idx) {
          std::size_t rest = idx;
          for (std::size_t d = 0; d < list_.size(); ++d) {
            a = a.with(list_[d], static_cast<Element>(rest % n_));
            rest /= n_;
          }
          out[idx] = eval_atom(s_, a, f) ? 1 : 0;
        }
        return out;
      }
      case Kind::Not: {
        std::vector<char> out = run(*f.left);
        for (char& c : out) c = c ? 0 : 1;
        return out;
      }
      case Kind::Or:
      case Kind::And: {
        std::vector<char> a = run(*f.left);
        std::vector<char> b = run(*f.right);
        for (std::size_t i = 0; i < cells_; ++i) a[i] = f.kind == Kind::Or ? (a[i] | b[i]) : (a[i] & b[i]);
        return a;
      }
      case Kind::Exists:
      case Kind::Forall: {
        std::vector<char> body = run(*f.left);
        const std::size_t stride = stride_[static_cast<std::size_t>(digit_of_[f.var])];
        std::vector<char> out(cells_);
        const bool want = f.kind == Kind::Exists;
        for (std::size_t idx = 0; idx < cells_; ++idx) {
          std::size_t digit = (idx / stride) % n_;
          if (digit != 0) {
            out[idx] = out[idx - digit * stride];
            continue;
          }
          std::size_t count = 0;
          for (std::size_t e = 0; e < n_; ++e) {
            if ((body[idx + e * stride] != 0) == want) ++count;
          }
          bool hit = count >= static_cast<std::size_t>(f.k);
          out[idx] = (want ? hit : !hit) ? 1 : 0;
        }
        return out;
      }
    }
    return {};
  }

  std::size_t index(const Assignment& alpha) const {
    std::size_t idx = 0;
    for (std::size_t d = 0; d < list_.size(); ++d) {
      Element e = alpha.has(list_[d]) ? alpha.get(list_[d]) : 0;
      idx += static_cast<std::size_t>(e) * stride_[d];
    }
    return idx;
  }

 private:
  const Structure& s_;
  std::size_t n_;
  std::array<int, kMaxVariables> digit_of_{};
  std::vector<int> list_;
  std::vector<std::size_t> stride_;
  std::size_t cells_ = 1;
};

constexpr std::size_t kMaxTableCells = std::size_t{1} << 22;

bool table_fits(const Structure& s, VarMask vars) {
  std::size_t cells = 1;
  for (int j = 0; j < kMaxVariables; ++j) {
    if (vars & var_bit(j)) {
      cells *= static_cast<std::size_t>(s.size());
      if (cells > kMaxTableCells) return false;
    }
  }
  return true;
}

void check_free(const Formula& f, VarMask dom) {
  VarMask missing = free_variables(f) & ~dom;
  for (int j = 0; j < kMaxVariables; ++j) {
    if (missing & var_bit(j)) throw EvaluationError("free variable " + var_name(j) + " is unassigned");
  }
}

// Constants are resolved eagerly so that missing constants surface even when
// the atom sits under a quantifier over an empty range.
void check_constants(const Structure& s, const Formula& f) {
  if (f.kind == Kind::Atom) {
    for (const Term& t : f.args) {
      if (t.type != Term::Type::Var) resolve(s, t, Assignment{});
    }
    return;
  }
  if (f.left) check_constants(s, *f.left);
  if (f.right) check_constants(s, *f.right);
}

}  // namespace

bool eval_naive(const Structure& s, const Assignment& alpha, const Formula& f) {
  switch (f.kind) {
    case Kind::Atom:
      return eval_atom(s, alpha, f);
    case Kind::Not:
      return !eval_naive(s, alpha, *f.left);
    case Kind::Or:
      return eval_naive(s, alpha, *f.left) || eval_naive(s, alpha, *f.right);
    case Kind::And:
      return eval_naive(s, alpha, *f.left) && eval_naive(s, alpha, *f.right);
    case Kind::Exists:
    case Kind::Forall: {
      const bool want = f.kind == Kind::Exists;
      int count = 0;
      for (Element e = 0; e < s.size() && count < f.k; ++e) {
        if (eval_naive(s, alpha.with(f.var, e), *f.left) == want) ++count;
      }
      return want ? count >= f.k : count < f.k;
    }
  }
  return false;
}

bool eval(const Structure& s, const Assignment& alpha, const Formula& f) {
  check_free(f, alpha.domain());
  check_constants(s, f);
  VarMask vars = metrics(f).variables;
  if (!table_fits(s, vars)) return eval_naive(s, alpha, f);
  TableEvaluator ev(s, vars);
  return ev.run(f)[ev.index(alpha)] != 0;
}

std::vector<bool> eval_family(const Formula& f, const Family& family) {
  check_free(f, family.dom());
  const Structure& s = family.structure();
  check_constants(s, f);
  std::vector<bool> out;
  out.reserve(family.size());
  if (family.empty()) return out;
  VarMask vars = metrics(f).variables;
  if (!table_fits(s, vars)) {
    for (const Assignment& a : family.members()) out.push_back(eval_naive(s, a, f));
    return out;
  }
  TableEvaluator ev(s, vars);
  std::vector<char> table = ev.run(f);
  for (const Assignment& a : family.members()) out.push_back(table[ev.index(a)] != 0);
  return out;
}

bool distinguishes(const Formula& f, const Family& a, const Family& b) {
  if (a.dom() != b.dom()) throw ContractError("families have different domains");
  for (bool v : eval_family(f, a)) {
    if (!v) return false;
  }
  for (bool v : eval_family(f, b)) {
    if (v) return false;
  }
  return true;
}

}  // namespace csgame
