#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace csgame {

// Elements are positions 0..size-1 in a structure's universe.
using Element = int;

inline constexpr int kMaxVariables = 6;
inline constexpr Element kUnassigned = -1;

// Bit j set <=> variable x_j is in the domain.
using VarMask = std::uint32_t;

inline constexpr VarMask var_bit(int var) { return VarMask{1} << var; }

struct Vocabulary {
  std::map<std::string, int> relations;  // name -> arity
  std::set<std::string> constants;

  bool operator==(const Vocabulary&) const = default;

  // Union of two vocabularies; throws ContractError on an arity clash.
  static Vocabulary merge(const Vocabulary& a, const Vocabulary& b);
  // Symbols shared by both.
  static Vocabulary intersect(const Vocabulary& a, const Vocabulary& b);
};

class Relation {
 public:
  Relation(int arity, int universe_size);

  int arity() const { return arity_; }
  bool holds(std::span<const Element> tuple) const { return table_[index(tuple)] != 0; }
  void insert(std::span<const Element> tuple);
  const std::set<std::vector<Element>>& tuples() const { return tuples_; }

 private:
  std::size_t index(std::span<const Element> tuple) const;

  int arity_;
  int universe_size_;
  std::vector<char> table_;
  std::set<std::vector<Element>> tuples_;
};

class Structure {
 public:
  explicit Structure(int size, std::string name = {});

  int size() const { return size_; }
  const std::string& name() const { return name_; }

  void add_relation(const std::string& name, int arity);
  void add_tuple(const std::string& name, std::vector<Element> tuple);
  void set_constant(const std::string& name, Element e);

  // Missing relations are empty.
  bool holds(std::string_view relation, std::span<const Element> tuple) const;
  const Relation* relation(std::string_view name) const;
  std::optional<Element> constant(std::string_view name) const;
  const std::map<std::string, Relation, std::less<>>& relations() const { return relations_; }
  const std::map<std::string, Element, std::less<>>& constants() const { return constants_; }
  Vocabulary vocabulary() const;

  // External element ids (defaults to 0..size-1); used only for IO.
  const std::vector<int>& labels() const { return labels_; }
  void set_labels(std::vector<int> labels);

  bool is_linear_order() const { return linear_order_; }

  bool operator==(const Structure& other) const;

 private:
  friend Structure make_linear_order(int n, bool with_successor);

  int size_;
  std::string name_;
  std::map<std::string, Relation, std::less<>> relations_;
  std::map<std::string, Element, std::less<>> constants_;
  std::vector<int> labels_;
  bool linear_order_ = false;
};

using StructurePtr = std::shared_ptr<const Structure>;

// ({0..n}, <, succ, min = 0, max = n). Without successor only < and the constants.
Structure make_linear_order(int n, bool with_successor = true);
StructurePtr linear_order(int n, bool with_successor = true);

// Linear-order distance d(a, b) = |a - b|.
inline int distance(Element a, Element b) { return a < b ? b - a : a - b; }

class Assignment {
 public:
  Assignment() { values_.fill(kUnassigned); }

  bool has(int var) const { return var >= 0 && var < kMaxVariables && values_[var] != kUnassigned; }
  Element at(int var) const;  // ContractError when unassigned
  Element get(int var) const { return values_[var]; }
  Assignment with(int var, Element e) const;  // alpha(e/var)
  VarMask domain() const;
  std::vector<int> domain_list() const;

  auto operator<=>(const Assignment&) const = default;

 private:
  std::array<Element, kMaxVariables> values_;
};

void check_variable(int var);

class Family {
 public:
  // Members are sorted and deduplicated. Every member must have domain exactly `dom`
  // and values inside the universe.
  Family() = default;  // placeholder without a structure
  Family(StructurePtr structure, VarMask dom, std::vector<Assignment> members);
  static Family sentence(StructurePtr structure);  // { (S, empty) }
  static Family empty(StructurePtr structure, VarMask dom);

  const Structure& structure() const { return *structure_; }
  const StructurePtr& structure_ptr() const { return structure_; }
  VarMask dom() const { return dom_; }
  const std::vector<Assignment>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const Assignment& a) const;
  bool subset_of(const Family& other) const;

  // Members whose flag is set, in member order.
  Family select(const std::vector<bool>& keep) const;

  bool operator==(const Family& other) const {
    return structure_ == other.structure_ && dom_ == other.dom_ && members_ == other.members_;
  }

 private:
  struct Trusted {};
  Family(Trusted, StructurePtr structure, VarMask dom, std::vector<Assignment> members);
  friend Family make_trusted_family(StructurePtr, VarMask, std::vector<Assignment>);

  StructurePtr structure_;
  VarMask dom_ = 0;
  std::vector<Assignment> members_;
};

// Skips validation; members are sorted and deduplicated. For operations whose
// output is valid by construction.
Family make_trusted_family(StructurePtr structure, VarMask dom, std::vector<Assignment> members);

class KChoiceFunction {
 public:
  // tuples[i] are the k pairwise-distinct elements chosen for members()[i].
  KChoiceFunction(const Family& family, std::vector<std::vector<Element>> tuples);

  int k() const { return k_; }
  const std::vector<std::vector<Element>>& tuples() const { return tuples_; }

 private:
  int k_;
  std::vector<std::vector<Element>> tuples_;
};

// A(F/j); choice[i] is the element for members()[i].
Family change(const Family& family, std::span<const Element> choice, int var);
// A(*/j)
Family multiply(const Family& family, int var);
// A(F^k/j)
Family k_change(const Family& family, const KChoiceFunction& choice, int var);
// B(*^k/j) in exclusion form: every extension of member i except exclusions[i]
// (|exclusions[i]| <= k-1). Empty when the universe has fewer than k elements.
Family k_multiply(const Family& family, int var, int k,
                  const std::vector<std::vector<Element>>& exclusions);

struct NaiveLimits {
  int max_universe = 5;
  std::size_t max_members = 3;
  int max_k = 2;
};

// Every family obtainable from the literal union-of-selections reading of
// k-multiplication, sorted. Test oracle only.
std::vector<Family> enumerate_k_multiplications_naive(const Family& family, int var, int k,
                                                      NaiveLimits limits = {});

}  // namespace csgame
